import threading
from collections import defaultdict
from contextlib import contextmanager

STREAM_CLASSES = ("bwt", "gap", "gt", "isa", "aux")


class Allocation:
    """Handle for one tracked allocation, released explicitly or by leaving MemoryTracker.track()
    """

    def __init__(self, tracker: "MemoryTracker", label: str, nbytes: int) -> None:
        self.tracker: MemoryTracker = tracker
        self.label: str = label
        self.nbytes: int = nbytes
        self.released: bool = False

    def release(self) -> None:
        if not self.released:
            self.released = True
            self.tracker._release(self)


class MemoryTracker:
    """Keeps the sum of tracked internal allocations (rank indexes, gap buffers, in-memory gap arrays, block sort
    arrays) and its peak. Only what callers register is counted.
    """

    def __init__(self) -> None:
        self.current: int = 0
        self.peak: int = 0
        self.peak_by_label: dict[str, int] = defaultdict(int)
        self._live: dict[str, int] = defaultdict(int)
        self._lock = threading.Lock()

    def allocate(self, label: str, nbytes: int) -> Allocation:
        with self._lock:
            self.current += nbytes
            self._live[label] += nbytes
            self.peak = max(self.peak, self.current)
            self.peak_by_label[label] = max(self.peak_by_label[label], self._live[label])

        return Allocation(self, label, nbytes)

    def _release(self, allocation: Allocation) -> None:
        with self._lock:
            self.current -= allocation.nbytes
            self._live[allocation.label] -= allocation.nbytes

    @contextmanager
    def track(self, label: str, nbytes: int):
        allocation = self.allocate(label, nbytes)
        try:
            yield allocation
        finally:
            allocation.release()


class IoStats:
    """Bytes moved through external files, per stream class
    """

    def __init__(self) -> None:
        self.written: dict[str, int] = dict.fromkeys(STREAM_CLASSES, 0)
        self.read: dict[str, int] = dict.fromkeys(STREAM_CLASSES, 0)
        self._lock = threading.Lock()

    def add_written(self, stream: str, nbytes: int) -> None:
        with self._lock:
            self.written[stream] += nbytes

    def add_read(self, stream: str, nbytes: int) -> None:
        with self._lock:
            self.read[stream] += nbytes

    def total(self, stream: str) -> int:
        return self.written[stream] + self.read[stream]

    def as_dict(self) -> dict[str, int]:
        result = {}
        for stream in STREAM_CLASSES:
            result[f"{stream}_written"] = self.written[stream]
            result[f"{stream}_read"] = self.read[stream]
        return result


def format_size(size: float) -> str:
    """Converts bytes into bigger units so it's more readable

    Args:
        size (float): Size in bytes

    Returns:
        str: Size with a unit
    """
    units = ['b', 'kb', 'mb', 'gb']
    unit_index = 0

    while size >= 1024 and unit_index < len(units) - 1:
        size /= 1024
        unit_index += 1

    return f"{round(size, 3)} {units[unit_index]}"
