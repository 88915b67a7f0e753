import logging
import threading
from math import ceil, log2
import numpy as np
from nano_bwt.errors import GapSumError
from nano_bwt.gaparray.GapArray import GapArray, SparseGapArray, memory_sink
from nano_bwt.gaparray.RadixSort import radix_sort

logger = logging.getLogger(__name__)


def default_buffer_capacity(right_size: int) -> int:
    """max(1024, b_r / ⌈log² b_r⌉) buffered increments
    """
    if right_size < 2:
        return 1024

    return max(1024, right_size // ceil(log2(right_size) ** 2))


def merge_gap(a, b, sink_factory=memory_sink, force_dense: bool = False):
    """Element-wise sum of two gap arrays, streamed over their non-zero entries. The result is sparse while its sum is
    at most ℓ/4 and dense otherwise

    Args:
        a: Gap array (in memory or file backed)
        b: Gap array over the same ℓ
        sink_factory (optional): Callable (dense, length) -> sink receiving increasing (index, value) pairs.
        Defaults to keeping the result in memory.
        force_dense (bool, optional): Always produce a dense array. Defaults to False.

    Raises:
        ValueError: If the lengths differ

    Returns:
        The merged gap array, as produced by the sink
    """
    if a.length != b.length:
        raise ValueError(f"can't merge gap arrays of lengths {a.length} and {b.length}")

    total = a.total + b.total
    sink = sink_factory(force_dense or 4 * total > a.length, a.length)
    left, right = a.iter_nonzero(), b.iter_nonzero()
    x, y = next(left, None), next(right, None)

    while x is not None or y is not None:
        if y is None or (x is not None and x[0] < y[0]):
            sink.add(*x)
            x = next(left, None)
        elif x is None or y[0] < x[0]:
            sink.add(*y)
            y = next(right, None)
        else:
            sink.add(x[0], x[1] + y[1])
            x, y = next(left, None), next(right, None)

    return sink.close()


def densify(gap, sink_factory=memory_sink):
    sink = sink_factory(True, gap.length)

    for index, value in gap.iter_nonzero():
        sink.add(index, value)

    return sink.close()


def discard(gap) -> None:
    """Deletes the file behind a consumed gap array. In-memory arrays have nothing to delete
    """
    remove = getattr(gap, "discard", None)
    if remove is not None:
        remove()


class GapAccumulator:
    """Collects the increments of one backward search into a gap array of length ℓ = b_l + 1.\n
    In the external mode increments go to a fixed size buffer. A full buffer is radix sorted, collapsed into
    (index, count) runs and turned into a sparse array whose sum is the buffer size. Pending arrays with equal sums are
    merged right away, so every sum appears at most once among them. In the in-memory mode increments go straight
    into a dense array. Both modes are safe for concurrent callers: one lock guards the fill position and the dense cells,
    and a caller that fills the buffer flushes it while holding the lock, so the other callers stall until it's done.
    """

    def __init__(self, length: int, expected_total: int, capacity: int = None, external: bool = True,
                 sink_factory=memory_sink, tracker=None, workers: int = 1, run=None) -> None:
        """Initializer for the GapAccumulator

        Args:
            length (int): ℓ = left size + 1
            expected_total (int): b_r, checked by finalize()
            capacity (int, optional): Buffer capacity. Defaults to default_buffer_capacity(b_r).
            external (bool, optional): Use the buffered sparse path. Defaults to True.
            sink_factory (optional): Where pending and final arrays are stored. Defaults to memory.
            tracker (MemoryTracker, optional): Allocation tracker. Defaults to None.
            workers (int, optional): Number of intervals the flush radix sort is split into. Defaults to 1.
            run (optional): Mapping function running the radix sort intervals, e.g. an executor's map. Defaults to None.
        """
        if length < 1:
            raise ValueError(f"gap array length must be positive, got {length}")

        self.length: int = length
        self.expected_total: int = expected_total
        self.capacity: int = default_buffer_capacity(expected_total) if capacity is None else max(1, capacity)
        self.external: bool = external
        self.sink_factory = sink_factory
        self.tracker = tracker
        self.workers: int = max(1, workers)
        self.run = run
        self.fill: int = 0
        self.flushes: int = 0
        self.peak_pending_bits: int = 0
        self.pending: dict[int, object] = {}
        self._lock = threading.Lock()

        if external:
            self._buffer: np.ndarray = np.empty(self.capacity, dtype=np.int64)
            self._dense: np.ndarray = None
            allocated = self._buffer.nbytes
        else:
            self._buffer = None
            self._dense = np.zeros(length, dtype=np.int64)
            allocated = self._dense.nbytes

        self._allocation = tracker.allocate("gap accumulator", allocated) if tracker is not None else None

    def increment(self, index: int) -> None:
        """Counts one right suffix at gap index `index`

        Args:
            index (int): 0 <= index < ℓ

        Raises:
            IndexError: If the index is out of range
        """
        if index < 0 or index >= self.length:
            raise IndexError(f"gap index {index} out of range for length {self.length}")

        with self._lock:
            if not self.external:
                self._dense[index] += 1
                return

            self._buffer[self.fill] = index
            self.fill += 1

            if self.fill == self.capacity:
                self._flush()

    def _flush(self) -> None:
        if self.fill == 0:
            return

        ordered = radix_sort(self._buffer[:self.fill], self.length, interval_bounds(self.fill, self.workers), self.run)
        starts = np.flatnonzero(np.diff(ordered, prepend=-1))
        counts = np.diff(np.append(starts, len(ordered)))
        sink = self.sink_factory(False, self.length)

        for index, count in zip(ordered[starts].tolist(), counts.tolist()):
            sink.add(index, count)

        self.fill = 0
        self.flushes += 1
        self._add_pending(sink.close())

    def _add_pending(self, gap) -> None:
        while gap.total in self.pending:
            other = self.pending.pop(gap.total)
            merged = merge_gap(other, gap, self.sink_factory)
            discard(other)
            discard(gap)
            gap = merged

        self.pending[gap.total] = gap
        footprint = sum(pending_bits(item) for item in self.pending.values())
        self.peak_pending_bits = max(self.peak_pending_bits, footprint)
        logger.debug("pending gap sums %s, %d bits", sorted(self.pending), footprint)

    def finalize(self):
        """Merges everything collected into one dense gap array

        Raises:
            GapSumError: If the counts don't add up to the expected total

        Returns:
            The dense gap array, as produced by the sink factory
        """
        if not self.external:
            result = GapArray(self._dense)
            if self.sink_factory is not memory_sink:
                result = densify(result, self.sink_factory)
        else:
            with self._lock:
                self._flush()
            arrays = sorted(self.pending.values(), key=lambda gap: gap.total)
            self.pending = {}

            if not arrays:
                result = densify(SparseGapArray(self.length, [], []), self.sink_factory)
            else:
                while len(arrays) > 1:
                    first, second = arrays.pop(0), arrays.pop(0)
                    merged = merge_gap(first, second, self.sink_factory, force_dense=not arrays)
                    discard(first)
                    discard(second)
                    arrays.append(merged)
                    arrays.sort(key=lambda gap: gap.total)

                result = arrays[0]
                if not result.is_dense:
                    result = densify(result, self.sink_factory)
                    discard(arrays[0])

        if self._allocation is not None:
            self._allocation.release()
            self._allocation = None

        if result.total != self.expected_total:
            raise GapSumError(f"gap array sums to {result.total}, expected {self.expected_total}")

        return result


def interval_bounds(count: int, parts: int) -> list[tuple[int, int]]:
    """Splits [0, count) into at most `parts` contiguous non-empty intervals of near equal length
    """
    parts = max(1, min(parts, count))
    edges = [count * part // parts for part in range(parts + 1)]
    return [(low, high) for low, high in zip(edges[:-1], edges[1:])]


def pending_bits(gap) -> int:
    bits = getattr(gap, "payload_bits", None)
    return bits if bits is not None else gap.encoded_bits()
