import os
import numpy as np
from nano_bwt.errors import CorruptFileError
from nano_bwt.succinct import BitReader, BitWriter
from nano_bwt.gaparray import GapArray, SparseGapArray, dense_bound, sparse_bound
from nano_bwt.extio.Container import (DENSE_GAP_KIND, SPARSE_GAP_KIND, header_size, map_file, read_header,
                                      reserve_header, write_header)

DEFAULT_GAP_RESTART = 4096
DEFAULT_ANCHOR_STRIDE = 64


def check_bound(file, bits: int, bound: float, path: str) -> None:
    if bits > bound:
        file.close()
        raise AssertionError(f"gap payload of {bits} bits exceeds the coding bound of {bound:.0f} bits for {path}")


class DenseGapWriter:
    """Sink writing a dense gap file from increasing (index, value) pairs. Skipped indices are written as zeros, and the
    bit position of every e-th element is recorded so decoding can restart there.
    """

    def __init__(self, path: str, length: int, restart: int = DEFAULT_GAP_RESTART, stats=None) -> None:
        if restart < 1:
            raise ValueError(f"restart block size must be positive, got {restart}")

        self.path: str = path
        self.length: int = length
        self.restart: int = restart
        self.stats = stats
        self.total: int = 0
        self._next: int = 0
        self._offsets: list[int] = []
        self._file = open(path, "wb")
        reserve_header(self._file, DENSE_GAP_KIND)
        self._writer: BitWriter = BitWriter(self._file)

    def _fill_zeros(self, index: int) -> None:
        while self._next < index:
            if self._next % self.restart == 0:
                self._offsets.append(self._writer.bit_length)

            stop = min(index, (self._next // self.restart + 1) * self.restart)
            count = stop - self._next
            # γ(1) is a single one bit
            self._writer.write_bits((1 << count) - 1, count)
            self._next = stop

    def add(self, index: int, value: int) -> None:
        if index < self._next or index >= self.length:
            raise ValueError(f"dense gap index {index} out of order or out of range for length {self.length}")

        self._fill_zeros(index)

        if index % self.restart == 0:
            self._offsets.append(self._writer.bit_length)

        self._writer.write_gamma(value + 1)
        self.total += value
        self._next = index + 1

    def close(self) -> "DenseGapFile":
        """Writes the tables and the header

        Raises:
            AssertionError: If the payload exceeds the dense coding bound
        """
        self._fill_zeros(self.length)
        check_bound(self._file, self._writer.bit_length, dense_bound(self.length, self.total), self.path)
        self._writer.finish()
        table_offset = self._file.tell()
        self._file.write(np.asarray(self._offsets, dtype="<u8").tobytes())
        write_header(self._file, DENSE_GAP_KIND, length=self.length, total=self.total, restart=self.restart,
                     restart_count=len(self._offsets), payload_bits=self._writer.bit_length, table_offset=table_offset)
        size = self._file.seek(0, os.SEEK_END)
        self._file.close()

        if self.stats is not None:
            self.stats.add_written("gap", size)

        return DenseGapFile(self.path, self.stats)


class SparseGapWriter:
    """Sink writing a sparse gap file. Every stride-th non-zero entry is anchored by its bit position and absolute index
    """

    def __init__(self, path: str, length: int, stride: int = DEFAULT_ANCHOR_STRIDE, stats=None) -> None:
        if stride < 1:
            raise ValueError(f"anchor stride must be positive, got {stride}")

        self.path: str = path
        self.length: int = length
        self.stride: int = stride
        self.stats = stats
        self.total: int = 0
        self.k: int = 0
        self._previous: int = -1
        self._anchors: list[tuple[int, int]] = []
        self._file = open(path, "wb")
        reserve_header(self._file, SPARSE_GAP_KIND)
        self._writer: BitWriter = BitWriter(self._file)

    def add(self, index: int, value: int) -> None:
        if index <= self._previous or index >= self.length or value < 1:
            raise ValueError(f"sparse gap entry ({index}, {value}) out of order or out of range")

        if self.k % self.stride == 0:
            self._anchors.append((self._writer.bit_length, index))

        self._writer.write_gamma(index - self._previous)
        self._writer.write_gamma(value)
        self._previous = index
        self.total += value
        self.k += 1

    def close(self) -> "SparseGapFile":
        check_bound(self._file, self._writer.bit_length, sparse_bound(self.length, self.total, self.k), self.path)
        self._writer.finish()
        table_offset = self._file.tell()
        self._file.write(np.asarray(self._anchors, dtype="<u8").reshape(-1).tobytes())
        write_header(self._file, SPARSE_GAP_KIND, length=self.length, total=self.total, k=self.k, stride=self.stride,
                     anchor_count=len(self._anchors), payload_bits=self._writer.bit_length, table_offset=table_offset)
        size = self._file.seek(0, os.SEEK_END)
        self._file.close()

        if self.stats is not None:
            self.stats.add_written("gap", size)

        return SparseGapFile(self.path, self.stats)


class GapFile:
    """Shared plumbing of the two gap file readers
    """

    kind: int = None

    def __init__(self, path: str, stats=None) -> None:
        self.path: str = path
        self.stats = stats
        self._map = map_file(path)
        self.header: dict[str, int] = read_header(self._map, self.kind)
        self.length: int = self.header["length"]
        self.total: int = self.header["total"]
        self.payload_bits: int = self.header["payload_bits"]
        self._base: int = 8 * header_size(self.kind)

    def __len__(self) -> int:
        return self.length

    def __enter__(self):
        return self

    def __exit__(self, *exc) -> None:
        self.close()

    def _table(self, count: int) -> np.ndarray:
        offset = self.header["table_offset"]

        if offset + 8 * count > len(self._map):
            raise CorruptFileError(f"{self.path} is truncated")

        return np.frombuffer(self._map[offset:offset + 8 * count], dtype="<u8").astype(np.int64)

    def _reader(self, position: int) -> BitReader:
        return BitReader(self._map, self._base + position, self._base + self.payload_bits)

    def _count_read(self, reader: BitReader, first: int) -> None:
        if self.stats is not None:
            self.stats.add_read("gap", (reader.position - self._base - first + 7) // 8)

    def encoded_bits(self) -> int:
        return self.payload_bits

    def close(self) -> None:
        if not self._map.closed:
            self._map.close()

    def discard(self) -> None:
        self.close()
        if os.path.exists(self.path):
            os.remove(self.path)


class DenseGapFile(GapFile):
    """Reader of a dense gap file storing γ(G[i] + 1) for every i
    """

    kind = DENSE_GAP_KIND
    is_dense = True

    def __init__(self, path: str, stats=None) -> None:
        super().__init__(path, stats)
        self.restart: int = self.header["restart"]

        if self.restart < 1 or self.header["restart_count"] != -(-self.length // self.restart):
            raise CorruptFileError(f"{path} has an inconsistent restart table")

        self.restart_offsets: np.ndarray = self._table(self.header["restart_count"])
        self._k: int = None

    def __repr__(self) -> str:
        return f"DenseGapFile({self.path!r}, length={self.length}, total={self.total})"

    def iter_values(self, start: int = 0):
        """Decodes G[start], G[start + 1], ... from the closest restart point

        Args:
            start (int, optional): First index, 0 <= start <= ℓ. Defaults to 0.

        Raises:
            IndexError: If start is out of range
        """
        if start < 0 or start > self.length:
            raise IndexError(f"gap index {start} out of range for length {self.length}")
        if start == self.length:
            return

        first = int(self.restart_offsets[start // self.restart])
        reader = self._reader(first)

        try:
            for _ in range(start % self.restart):
                reader.read_gamma()
            for _ in range(self.length - start):
                yield reader.read_gamma() - 1
        except EOFError as e:
            raise CorruptFileError(f"{self.path} ends before {self.length} values") from e
        finally:
            self._count_read(reader, first)

    def decode_chunk(self, chunk: int) -> np.ndarray:
        """Values of the chunk [chunk·e, (chunk + 1)·e), decoded from its restart point
        """
        start = chunk * self.restart
        stop = min(self.length, start + self.restart)
        first = int(self.restart_offsets[chunk])
        reader = self._reader(first)

        try:
            values = np.fromiter((reader.read_gamma() - 1 for _ in range(stop - start)), dtype=np.int64, count=stop - start)
        except EOFError as e:
            raise CorruptFileError(f"{self.path} ends inside chunk {chunk}") from e

        self._count_read(reader, first)
        return values

    @property
    def chunk_count(self) -> int:
        return len(self.restart_offsets)

    def iter_nonzero(self):
        for index, value in enumerate(self.iter_values()):
            if value:
                yield index, value

    @property
    def k(self) -> int:
        if self._k is None:
            self._k = sum(1 for _ in self.iter_nonzero())
        return self._k

    def to_dense(self) -> GapArray:
        return GapArray(np.fromiter(self.iter_values(), dtype=np.int64, count=self.length))

    def bound(self) -> int:
        return dense_bound(self.length, self.total)

    def describe(self) -> dict:
        return {"kind": "dense gap", "path": self.path, "length": self.length, "total": self.total,
                "restart": self.restart, "payload_bits": self.payload_bits, "bound_bits": self.bound()}


class SparseGapFile(GapFile):
    """Reader of a sparse gap file: interleaved γ(index delta), γ(value) pairs plus an anchor table
    """

    kind = SPARSE_GAP_KIND
    is_dense = False

    def __init__(self, path: str, stats=None) -> None:
        super().__init__(path, stats)
        self.k: int = self.header["k"]
        self.stride: int = self.header["stride"]

        if self.stride < 1 or self.header["anchor_count"] != -(-self.k // self.stride):
            raise CorruptFileError(f"{path} has an inconsistent anchor table")

        anchors = self._table(2 * self.header["anchor_count"]).reshape(-1, 2)
        self.anchor_bits: np.ndarray = anchors[:, 0]
        self.anchor_indices: np.ndarray = anchors[:, 1]

    def __repr__(self) -> str:
        return f"SparseGapFile({self.path!r}, length={self.length}, total={self.total}, k={self.k})"

    def iter_nonzero(self, start: int = 0):
        """Decodes the (index, value) pairs with index >= start. The anchor table locates the last anchored entry at or
        before start, so at most `stride` entries are skipped

        Args:
            start (int, optional): Gap index to start from, 0 <= start <= ℓ. Defaults to 0.

        Raises:
            IndexError: If start is out of range
        """
        if start < 0 or start > self.length:
            raise IndexError(f"gap index {start} out of range for length {self.length}")
        if self.k == 0:
            return

        anchor = max(int(np.searchsorted(self.anchor_indices, start, side="right")) - 1, 0)
        first = int(self.anchor_bits[anchor])
        reader = self._reader(first)
        index = int(self.anchor_indices[anchor])

        try:
            for entry in range(anchor * self.stride, self.k):
                delta = reader.read_gamma()
                value = reader.read_gamma()
                if entry != anchor * self.stride:
                    index += delta
                if index >= start:
                    yield index, value
        except EOFError as e:
            raise CorruptFileError(f"{self.path} ends before {self.k} entries") from e
        finally:
            self._count_read(reader, first)

    def iter_values(self, start: int = 0):
        position = start

        for index, value in self.iter_nonzero(start):
            yield from (0 for _ in range(index - position))
            yield value
            position = index + 1

        yield from (0 for _ in range(self.length - position))

    def to_dense(self) -> GapArray:
        return self.to_memory().to_dense()

    def to_memory(self) -> SparseGapArray:
        pairs = list(self.iter_nonzero())
        return SparseGapArray(self.length, [index for index, _ in pairs], [value for _, value in pairs])

    def bound(self) -> float:
        return sparse_bound(self.length, self.total, self.k)

    def describe(self) -> dict:
        return {"kind": "sparse gap", "path": self.path, "length": self.length, "total": self.total, "k": self.k,
                "anchor_stride": self.stride, "payload_bits": self.payload_bits, "bound_bits": round(self.bound(), 1)}


def anchor_stride_for(n: int) -> int:
    """max(64, ⌈log₂ n⌉²)
    """
    return max(DEFAULT_ANCHOR_STRIDE, (max(n, 2) - 1).bit_length() ** 2)


def gap_file_sink(path_factory, restart: int = DEFAULT_GAP_RESTART, stride: int = DEFAULT_ANCHOR_STRIDE, stats=None):
    """Sink factory for GapAccumulator and merge_gap that writes every array to a fresh file

    Args:
        path_factory: Callable returning a new unique path for a dense (True) or sparse (False) array
        restart (int, optional): e for dense files. Defaults to 4096.
        stride (int, optional): Anchor stride for sparse files. Defaults to 64.
        stats (IoStats, optional): I/O counters. Defaults to None.
    """

    def factory(dense: bool, length: int):
        if dense:
            return DenseGapWriter(path_factory(True), length, restart, stats)
        return SparseGapWriter(path_factory(False), length, stride, stats)

    return factory


def write_gap(path: str, gap, restart: int = DEFAULT_GAP_RESTART, stride: int = DEFAULT_ANCHOR_STRIDE, stats=None, dense: bool = None):
    """Writes an in-memory gap array to a file of its own kind, or the one `dense` asks for
    """
    dense = gap.is_dense if dense is None else dense
    sink = DenseGapWriter(path, gap.length, restart, stats) if dense else SparseGapWriter(path, gap.length, stride, stats)

    for index, value in gap.iter_nonzero():
        sink.add(index, value)

    return sink.close()
