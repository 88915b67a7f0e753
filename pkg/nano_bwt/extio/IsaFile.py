import os
import numpy as np
from nano_bwt.errors import CorruptFileError
from nano_bwt.extio.Container import ISA_KIND, header_size, map_file, read_header, reserve_header, write_header


class IsaFile:
    """Sampled inverse suffix array: (position, rank) records of two little endian u64 each, in rank order
    """

    kind = ISA_KIND

    def __init__(self, path: str, stats=None) -> None:
        self.path: str = path
        self.stats = stats
        self._map = map_file(path)
        header = read_header(self._map, ISA_KIND)
        self.rate: int = header["rate"]
        self.count: int = header["count"]
        self._offset: int = header_size(ISA_KIND)

        if self._offset + 16 * self.count > len(self._map):
            raise CorruptFileError(f"{path} holds fewer than {self.count} samples")

    def __len__(self) -> int:
        return self.count

    def samples(self) -> np.ndarray:
        data = self._map[self._offset:self._offset + 16 * self.count]

        if self.stats is not None:
            self.stats.add_read("isa", len(data))

        return np.frombuffer(data, dtype="<u8").astype(np.int64).reshape(-1, 2)

    def close(self) -> None:
        if not self._map.closed:
            self._map.close()

    def discard(self) -> None:
        self.close()
        if os.path.exists(self.path):
            os.remove(self.path)

    def describe(self) -> dict:
        return {"kind": "isa", "path": self.path, "rate": self.rate, "samples": self.count}


def write_isa(path: str, samples, rate: int, stats=None) -> IsaFile:
    """Writes (position, rank) rows

    Args:
        path (str): Output path
        samples: Array of shape (k, 2) in rank order
        rate (int): Sampling rate the positions were chosen with
        stats (IoStats, optional): I/O counters. Defaults to None.

    Raises:
        ValueError: If the rows aren't in rank order

    Returns:
        IsaFile: Reader over the written file
    """
    samples = np.asarray(samples, dtype=np.int64).reshape(-1, 2)

    if len(samples) > 1 and np.any(np.diff(samples[:, 1]) <= 0):
        raise ValueError("isa samples must be in increasing rank order")

    with open(path, "wb") as f:
        reserve_header(f, ISA_KIND)
        f.write(samples.astype("<u8").tobytes())
        write_header(f, ISA_KIND, rate=rate, count=len(samples))
        size = f.seek(0, os.SEEK_END)

    if stats is not None:
        stats.add_written("isa", size)

    return IsaFile(path, stats)
