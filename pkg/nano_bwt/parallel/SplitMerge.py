import logging
from math import ceil, log2
import numpy as np
from nano_bwt.errors import GapSumError
from nano_bwt.gaparray import GapArray
from nano_bwt.merge.StreamMerge import EMIT_BYTES
from nano_bwt.merge.SortedSegment import read_range
from nano_bwt.parallel.Workers import WorkSplit, mapper

logger = logging.getLogger(__name__)

READ_CHUNK = 1 << 16


def chunk_sums(gap) -> tuple[np.ndarray, int]:
    """Sum of every e-element gap chunk. File backed arrays decode chunk by chunk from their restart points,
    in-memory arrays are cut into READ_CHUNK sized chunks
    """
    if isinstance(gap, GapArray):
        restart = READ_CHUNK
        values = gap.values
        starts = np.arange(0, len(values), restart)
        return np.add.reduceat(values, starts) if len(values) else np.zeros(0, dtype=np.int64), restart

    return np.array([int(gap.decode_chunk(c).sum()) for c in range(gap.chunk_count)], dtype=np.int64), gap.restart


def chunk_values(gap, chunk: int, restart: int) -> np.ndarray:
    if isinstance(gap, GapArray):
        return np.asarray(gap.values[chunk * restart:(chunk + 1) * restart], dtype=np.int64)

    return gap.decode_chunk(chunk)


SEARCHES = ("auto", "flat", "tree")


def split_search_for(total: int, p: int) -> str:
    """Flat search costs about p·log³n, the tree search log p·log³n. The tree is used once the flat cost exceeds the
    merge work of a single worker
    """
    log_n = max(1, ceil(log2(max(total, 2))))
    return "tree" if p * log_n ** 3 > ceil(total / max(1, p)) else "flat"


class BoundaryLocator:
    """Finds the merge state at a merged output position from the prefix sums of the gap chunks
    """

    def __init__(self, gap, sums: np.ndarray, restart: int) -> None:
        self.gap = gap
        self.restart: int = restart
        self.chunk_index: np.ndarray = np.arange(len(sums)) * restart
        self.chunk_starts: np.ndarray = self.chunk_index + np.concatenate(([0], np.cumsum(sums)[:-1]))

    def __len__(self) -> int:
        return len(self.chunk_starts)

    def locate(self, boundary: int, low: int = 0, high: int = None) -> tuple[int, tuple[int, int, int]]:
        """State (gap index, skipped right symbols, right offset) at `boundary`, searching chunks [low, high) only

        Returns:
            tuple: Chunk holding the boundary and the state
        """
        high = len(self) if high is None else high
        chunk = low + int(np.searchsorted(self.chunk_starts[low:high], boundary, side="right")) - 1
        values = chunk_values(self.gap, chunk, self.restart)
        before = int(self.chunk_starts[chunk] - self.chunk_index[chunk])
        positions = self.chunk_index[chunk] + np.arange(len(values)) + before + np.concatenate(([0], np.cumsum(values)[:-1]))
        local = int(np.searchsorted(positions, boundary, side="right")) - 1
        index = int(self.chunk_index[chunk]) + local
        skipped = boundary - int(positions[local])
        return chunk, (index, skipped, int(positions[local]) - index + skipped)


def flat_search(locator: BoundaryLocator, part: int, parts: int) -> list[tuple[int, int, int]]:
    return [locator.locate(j * part)[1] for j in range(parts)]


def tree_search(locator: BoundaryLocator, part: int, parts: int, executor=None) -> list[tuple[int, int, int]]:
    """Bisects the parts level by level. The boundary in the middle of a range of parts is searched only between the
    chunks of the range's outer boundaries, and every level runs in parallel
    """
    first_chunk, first = locator.locate(0)
    states = [first] + [None] * (parts - 1)
    level = [(0, parts, first_chunk, len(locator))]

    def work(job):
        low, high, chunk_low, chunk_high = job
        middle = (low + high) // 2
        return middle, locator.locate(middle * part, chunk_low, chunk_high)

    while level:
        level = [job for job in level if job[1] - job[0] > 1]
        following = []

        for (low, high, chunk_low, chunk_high), (middle, (chunk, state)) in zip(level, mapper(executor)(work, level)):
            states[middle] = state
            following += [(low, middle, chunk_low, chunk + 1), (middle, high, chunk, chunk_high)]

        level = following

    return states


def split_for_merge(gap, left_size: int, right_size: int, p: int, d: int, search: str = "auto",
                    executor=None) -> WorkSplit:
    """Cuts the merged stream into parts of T = ⌈(b_l + b_r) / p⌉ symbols, rounded up to a multiple of d, and finds the
    state every worker starts in.\n
    Gap index i opens at merged position pos(i) = i + G[0] + ... + G[i-1]. For a boundary P the worker starts at the
    largest i with pos(i) <= P, having already skipped o = P - pos(i) <= G[i] right symbols of group i. Chunk sums
    narrow the search down to one chunk, which is decoded from its restart point. Both searches find the same states.

    Args:
        gap: Dense gap array of length b_l + 1, in memory or file backed
        left_size (int): b_l
        right_size (int): b_r
        p (int): Requested number of workers
        d (int): BWT codec block size
        search (str, optional): "flat", "tree" or "auto" to pick by split_search_for. Defaults to "auto".
        executor (optional): Thread pool for the tree search levels. Defaults to None.

    Raises:
        GapSumError: If the gap array doesn't sum to b_r
        ValueError: If search is unknown

    Returns:
        WorkSplit: Output ranges, each starting with the state (gap index, skipped right symbols, right offset)
    """
    if search not in SEARCHES:
        raise ValueError(f"split search must be one of {SEARCHES}, got {search!r}")

    total = left_size + right_size

    if total == 0:
        return WorkSplit([(0, 0)], [(0, 0, 0)])

    part = ceil(ceil(total / max(1, p)) / d) * d
    parts = ceil(total / part)

    if parts < p:
        logger.warning("merge of %d symbols split into %d parts instead of %d", total, parts, p)

    sums, restart = chunk_sums(gap)

    if int(sums.sum()) != right_size:
        raise GapSumError(f"gap array sums to {int(sums.sum())}, expected {right_size}")

    locator = BoundaryLocator(gap, sums, restart)
    search = split_search_for(total, parts) if search == "auto" else search
    logger.debug("%s split search for %d parts of %d symbols", search, parts, part)

    if search == "tree":
        starts = tree_search(locator, part, parts, executor)
    else:
        starts = flat_search(locator, part, parts)

    ranges = [(j * part, min(total, (j + 1) * part)) for j in range(parts)]
    return WorkSplit(ranges, starts)


class SymbolCursor:
    """Reads a BWT (array, BwtFile or MultiPartBwt) sequentially from an arbitrary offset in buffered chunks
    """

    def __init__(self, source, start: int) -> None:
        self.source = source
        self.position: int = start
        self._buffer: np.ndarray = np.zeros(0, dtype=np.uint8)
        self._offset: int = 0

    def take(self, count: int) -> np.ndarray:
        if count == 0:
            return self._buffer[:0]

        available = len(self._buffer) - self._offset

        if available < count:
            rest = self._buffer[self._offset:]
            fresh = read_range(self.source, self.position, self.position + max(count - available, READ_CHUNK))
            self.position += len(fresh)
            self._buffer = np.concatenate((rest, fresh)) if len(rest) else fresh
            self._offset = 0

            if len(self._buffer) < count:
                raise GapSumError(f"stream ended {count - len(self._buffer)} symbols early")

        taken = self._buffer[self._offset:self._offset + count]
        self._offset += count
        return taken


def merge_part(left, right, gap, left_size: int, state: tuple[int, int, int], count: int, sink=None):
    """Emits exactly `count` merged symbols starting from a split state

    Returns:
        The closed sink, or the symbols when no sink is given
    """
    index, skipped, right_offset = state
    left_cursor, right_cursor = SymbolCursor(left, index), SymbolCursor(right, right_offset)
    pieces, pending, remaining = [], 0, count
    out = []

    def emit(symbols: np.ndarray) -> None:
        nonlocal pending
        pieces.append(symbols)
        pending += len(symbols)
        if pending >= EMIT_BYTES:
            block = np.concatenate(pieces)
            pieces.clear()
            pending = 0
            if sink is None:
                out.append(block)
            else:
                sink.write(block)

    for current, value in enumerate(gap.iter_values(index), start=index):
        if remaining == 0:
            break

        value -= skipped if current == index else 0
        taken = min(value, remaining)
        emit(right_cursor.take(taken))
        remaining -= taken

        if remaining and current < left_size:
            emit(left_cursor.take(1))
            remaining -= 1

    if remaining:
        raise GapSumError(f"merge part ran out {remaining} symbols early")

    block = np.concatenate(pieces) if pieces else np.zeros(0, dtype=np.uint8)

    if sink is None:
        out.append(block)
        return np.concatenate(out)

    sink.write(block)
    return sink.close()


def parallel_merge_streams(left, right, gap, split: WorkSplit, sink_factory=None, executor=None) -> list:
    """Merges two BWTs with one worker per split range. Worker j writes the merged symbols [P_j, P_{j+1}) to its own
    sink, so the parts concatenate to exactly the serial merge_streams output

    Args:
        left: Left BWT
        right: Right BWT
        gap: Dense gap array of length len(left) + 1
        split (WorkSplit): Result of split_for_merge
        sink_factory (optional): Called with the part number, returns an object with write() and close(). Defaults to
            returning arrays.
        executor (optional): Thread pool. Defaults to None.

    Returns:
        list: Closed sinks (for instance BwtFile parts) or arrays, one per part
    """
    left_size = len(left)

    def work(part: int):
        low, high = split.ranges[part]
        sink = sink_factory(part) if sink_factory is not None else None
        return merge_part(left, right, gap, left_size, split.starts[part], high - low, sink)

    return mapper(executor)(work, range(len(split)))
