import os
from concurrent.futures import ThreadPoolExecutor
from contextlib import contextmanager
from math import ceil
from nano_bwt.gaparray import interval_bounds

MIN_WORK_PER_WORKER = 1024


class WorkSplit:
    """Per worker half open ranges over an input, together with the state each worker starts decoding from
    """

    def __init__(self, ranges: list[tuple[int, int]], starts: list = None) -> None:
        """Initializer for the WorkSplit

        Args:
            ranges (list[tuple[int, int]]): Disjoint contiguous ranges covering [0, total)
            starts (list, optional): Start state per range. Defaults to None.

        Raises:
            ValueError: If the ranges aren't contiguous or the starts don't match them
        """
        position = ranges[0][0] if ranges else 0

        for low, high in ranges:
            if low != position or high < low:
                raise ValueError(f"ranges must be contiguous, got {ranges}")
            position = high

        if starts is not None and len(starts) != len(ranges):
            raise ValueError("one start state per range is needed")

        self.ranges: list[tuple[int, int]] = list(ranges)
        self.starts: list = starts

    def __len__(self) -> int:
        return len(self.ranges)

    def __iter__(self):
        return iter(self.ranges)

    def __repr__(self) -> str:
        return f"WorkSplit({self.ranges})"

    @property
    def total(self) -> int:
        return self.ranges[-1][1] - self.ranges[0][0] if self.ranges else 0


def split_evenly(count: int, parts: int) -> WorkSplit:
    return WorkSplit(interval_bounds(count, parts))


def default_threads() -> int:
    return os.cpu_count() or 1


def clamp_workers(threads: int, work: int, minimum: int = MIN_WORK_PER_WORKER) -> int:
    """Worker count for one merge: at most `threads`, and at least `minimum` items per worker
    """
    return max(1, min(threads, ceil(work / minimum)))


def mapper(executor):
    """Mapping function running a function over jobs, in the pool if there is one. Results are collected, so errors
    raised by workers propagate
    """
    if executor is None:
        return lambda function, jobs: [function(job) for job in jobs]

    return lambda function, jobs: list(executor.map(function, jobs))


@contextmanager
def worker_pool(threads: int):
    """Thread pool for `threads` > 1, None otherwise
    """
    if threads <= 1:
        yield None
        return

    with ThreadPoolExecutor(max_workers=threads, thread_name_prefix="nano-bwt") as executor:
        yield executor
