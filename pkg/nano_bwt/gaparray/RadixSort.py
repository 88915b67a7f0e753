from math import isqrt
import numpy as np


def bucket_count_for(key_limit: int) -> int:
    """⌈√(key_limit)⌉ buckets, so two passes cover every key in [0, key_limit)
    """
    root = isqrt(max(key_limit, 1))
    return root if root * root >= key_limit else root + 1


def interval_histograms(digits: np.ndarray, bucket_count: int, bounds: list[tuple[int, int]]) -> np.ndarray:
    return np.stack([np.bincount(digits[low:high], minlength=bucket_count) for low, high in bounds])


def interval_offsets(histograms: np.ndarray) -> np.ndarray:
    """Write offset of every (interval, bucket) pair for a stable scatter: all earlier buckets, then the same bucket in
    earlier intervals
    """
    bucket_starts = np.concatenate(([0], np.cumsum(histograms.sum(axis=0))[:-1]))
    earlier = np.cumsum(histograms, axis=0) - histograms
    return bucket_starts[np.newaxis, :] + earlier


def scatter_interval(values: np.ndarray, digits: np.ndarray, offsets: np.ndarray, low: int, high: int, out: np.ndarray) -> None:
    """Places values[low:high] into their buckets in input order, starting at the given per-bucket offsets
    """
    segment = digits[low:high]
    order = np.argsort(segment, kind="stable")
    sorted_digits = segment[order]
    local_starts = np.searchsorted(sorted_digits, sorted_digits, side="left")
    positions = offsets[sorted_digits] + np.arange(len(order)) - local_starts
    out[positions] = values[low:high][order]


def stable_bucket_pass(values: np.ndarray, digits: np.ndarray, bucket_count: int, bounds: list[tuple[int, int]], run=None) -> np.ndarray:
    """One counting sort pass over the given intervals. `run` maps a function over the intervals, by default serially

    Args:
        values (np.ndarray): Values to move
        digits (np.ndarray): Bucket of each value
        bucket_count (int): Number of buckets
        bounds (list[tuple[int, int]]): Contiguous intervals covering the input
        run (optional): Callable taking a function and a list of arguments. Defaults to a serial loop.

    Returns:
        np.ndarray: Values stably ordered by digit
    """
    histograms = interval_histograms(digits, bucket_count, bounds)
    offsets = interval_offsets(histograms)
    out = np.empty_like(values)
    jobs = [(index, low, high) for index, (low, high) in enumerate(bounds)]

    def place(job: tuple[int, int, int]) -> None:
        index, low, high = job
        scatter_interval(values, digits, offsets[index], low, high, out)

    if run is None:
        for job in jobs:
            place(job)
    else:
        run(place, jobs)

    return out


def radix_sort(values, key_limit: int, bounds: list[tuple[int, int]] = None, run=None) -> np.ndarray:
    """Two phase radix sort with ⌈√key_limit⌉ buckets: first by the low digit, then stably by the high digit

    Args:
        values: Non-negative integers < key_limit
        key_limit (int): Exclusive upper bound on the values
        bounds (list[tuple[int, int]], optional): Work intervals. Defaults to one interval.
        run (optional): Mapping function for parallel placement. Defaults to None.

    Returns:
        np.ndarray: Sorted int64 values
    """
    values = np.asarray(values, dtype=np.int64)

    if len(values) < 2:
        return values.copy()

    buckets = bucket_count_for(key_limit)
    bounds = [(0, len(values))] if bounds is None else bounds
    low_sorted = stable_bucket_pass(values, values % buckets, buckets, bounds, run)
    return stable_bucket_pass(low_sorted, low_sorted // buckets, buckets, bounds, run)
