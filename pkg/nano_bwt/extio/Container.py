import mmap
import struct
from nano_bwt.errors import CorruptFileError

MAGIC = b"BWTB"
VERSION = 1
PREFIX = struct.Struct("<4sHBB")

BWT_KIND = ord("B")
DENSE_GAP_KIND = ord("D")
SPARSE_GAP_KIND = ord("S")
GT_KIND = ord("G")
ISA_KIND = ord("I")

KIND_FIELDS = {
    BWT_KIND: ("m", "d", "code_count", "block_count", "run_count", "payload_bits", "table_offset"),
    DENSE_GAP_KIND: ("length", "total", "restart", "restart_count", "payload_bits", "table_offset"),
    SPARSE_GAP_KIND: ("length", "total", "k", "stride", "anchor_count", "payload_bits", "table_offset"),
    GT_KIND: ("count",),
    ISA_KIND: ("rate", "count"),
}


def header_size(kind: int) -> int:
    return PREFIX.size + 8 * len(KIND_FIELDS[kind])


def write_header(f, kind: int, **fields: int) -> None:
    """Writes the common prefix (magic, version, kind) and the kind's little endian 64 bit fields at the start of f
    """
    values = [int(fields[name]) for name in KIND_FIELDS[kind]]
    f.seek(0)
    f.write(PREFIX.pack(MAGIC, VERSION, kind, 0))
    f.write(struct.pack(f"<{len(values)}Q", *values))


def reserve_header(f, kind: int) -> None:
    f.write(bytes(header_size(kind)))


def read_kind(data) -> int:
    """Validates magic and version and returns the kind byte

    Raises:
        CorruptFileError: If the prefix is malformed
    """
    if len(data) < PREFIX.size:
        raise CorruptFileError("file too short for a header")

    magic, version, kind, _ = PREFIX.unpack_from(data, 0)

    if magic != MAGIC:
        raise CorruptFileError(f"bad magic {magic!r}")
    if version != VERSION:
        raise CorruptFileError(f"unsupported format version {version}")
    if kind not in KIND_FIELDS:
        raise CorruptFileError(f"unknown file kind {kind!r}")

    return kind


def read_header(data, expected_kind: int) -> dict[str, int]:
    kind = read_kind(data)

    if kind != expected_kind:
        raise CorruptFileError(f"expected a {chr(expected_kind)} file, found {chr(kind)}")

    names = KIND_FIELDS[kind]
    if len(data) < header_size(kind):
        raise CorruptFileError("truncated header")

    return dict(zip(names, struct.unpack_from(f"<{len(names)}Q", data, PREFIX.size)))


def map_file(path: str):
    """Maps a file read-only. The map stays valid after the file object is closed
    """
    with open(path, "rb") as f:
        return mmap.mmap(f.fileno(), 0, access=mmap.ACCESS_READ)


def peek_kind(path: str) -> int:
    with open(path, "rb") as f:
        return read_kind(f.read(PREFIX.size))
