import os
import numpy as np
from nano_bwt.errors import CorruptFileError
from nano_bwt.succinct import BitWriter
from nano_bwt.extio.Container import GT_KIND, header_size, map_file, read_header, reserve_header, write_header


class GtWriter:
    """Appends gt bits to a file, packed most significant bit first
    """

    def __init__(self, path: str, stats=None) -> None:
        self.path: str = path
        self.stats = stats
        self._file = open(path, "wb")
        reserve_header(self._file, GT_KIND)
        self._writer: BitWriter = BitWriter(self._file)

    def write(self, bits) -> None:
        bits = np.asarray(bits, dtype=np.uint8)

        if not len(bits):
            return

        packed = np.packbits(bits)
        value = int.from_bytes(packed.tobytes(), "big") >> (8 * len(packed) - len(bits))
        self._writer.write_bits(value, len(bits))

    def close(self) -> "GtFile":
        self._writer.finish()
        write_header(self._file, GT_KIND, count=self._writer.bit_length)
        size = self._file.seek(0, os.SEEK_END)
        self._file.close()

        if self.stats is not None:
            self.stats.add_written("gt", size)

        return GtFile(self.path, self.stats)


class GtFile:
    """Packed gt bits, one per represented suffix
    """

    kind = GT_KIND

    def __init__(self, path: str, stats=None) -> None:
        self.path: str = path
        self.stats = stats
        self._map = map_file(path)
        self.count: int = read_header(self._map, GT_KIND)["count"]
        self._offset: int = header_size(GT_KIND)

        if self._offset + (self.count + 7) // 8 > len(self._map):
            raise CorruptFileError(f"{path} holds fewer than {self.count} bits")

    def __len__(self) -> int:
        return self.count

    def __repr__(self) -> str:
        return f"GtFile({self.path!r}, count={self.count})"

    def read_range(self, start: int, stop: int) -> np.ndarray:
        """Bits [start, stop) as an uint8 array
        """
        start, stop = max(0, start), min(stop, self.count)

        if start >= stop:
            return np.zeros(0, dtype=np.uint8)

        first, last = start // 8, (stop + 7) // 8
        data = self._map[self._offset + first:self._offset + last]

        if self.stats is not None:
            self.stats.add_read("gt", len(data))

        bits = np.unpackbits(np.frombuffer(data, dtype=np.uint8))
        return bits[start - 8 * first:stop - 8 * first]

    def read_all(self) -> np.ndarray:
        return self.read_range(0, self.count)

    def close(self) -> None:
        if not self._map.closed:
            self._map.close()

    def discard(self) -> None:
        self.close()
        if os.path.exists(self.path):
            os.remove(self.path)

    def describe(self) -> dict:
        ones = int(self.read_all().sum()) if self.count else 0
        return {"kind": "gt", "path": self.path, "bits": self.count, "ones": ones}


def write_gt(path: str, bits, stats=None) -> GtFile:
    writer = GtWriter(path, stats)
    writer.write(bits)
    return writer.close()
