import numpy as np
import pytest
from nano_bwt.errors import GapSumError
from nano_bwt.accounting import MemoryTracker
from nano_bwt.gaparray import (GapArray, SparseGapArray, memory_sink, dense_bound, sparse_bound, gap_statistics,
                               radix_sort, bucket_count_for, GapAccumulator, merge_gap, densify,
                               default_buffer_capacity, interval_bounds)


def serial_run(function, jobs):
    return [function(job) for job in jobs]


def random_gap(rng, length: int, total: int) -> np.ndarray:
    return np.bincount(rng.integers(0, length, total), minlength=length).astype(np.int64)


def test_bounds():
    assert dense_bound(10, 10) == 30
    assert dense_bound(10, 11) == 55
    assert sparse_bound(10, 0, 0) == 0.0
    assert sparse_bound(16, 4, 2) == 2 * 2 * (1 + 4) + 128


def test_dense_gap_array_basics():
    gap = GapArray([2, 0, 1, 0])

    assert len(gap) == 4
    assert gap.total == 3
    assert gap.k == 2
    assert list(gap.iter_nonzero()) == [(0, 2), (2, 1)]
    assert list(gap.iter_values(1)) == [0, 1, 0]
    assert gap.encode().decode() == [3, 1, 2, 1]
    assert gap.encoded_bits() == 3 + 1 + 3 + 1


def test_sparse_gap_array_basics():
    sparse = SparseGapArray(6, [1, 4], [3, 1])

    assert sparse.total == 4
    assert sparse.k == 2
    assert sparse.to_dense() == GapArray([0, 3, 0, 0, 1, 0])
    assert list(sparse.iter_values(3)) == [0, 1, 0]
    assert sparse.encode().decode() == [2, 3, 3, 1]
    assert SparseGapArray.from_stream(6, sparse.encode()) == sparse


@pytest.mark.parametrize("indices, values", [([2, 1], [1, 1]), ([0, 6], [1, 1]), ([1], [0]), ([1, 2], [1])])
def test_sparse_gap_array_validation(indices, values):
    with pytest.raises(ValueError):
        SparseGapArray(6, indices, values)


@pytest.mark.parametrize("count", [2000])
def test_coding_bounds_hold(rng, count):
    violations = 0

    for _ in range(count):
        length = int(rng.integers(1, 200))
        total = int(rng.integers(0, 4 * length))
        dense = GapArray(random_gap(rng, length, total))
        pairs = list(dense.iter_nonzero())
        sparse = SparseGapArray(length, [i for i, _ in pairs], [v for _, v in pairs])

        violations += dense.encoded_bits() > dense.bound()
        violations += sparse.encoded_bits() > sparse.bound()

    assert violations == 0


@pytest.mark.slow
def test_coding_bounds_hold_exhaustively(rng):
    test_coding_bounds_hold(rng, 10000)


def test_merge_gap_picks_representation():
    a = SparseGapArray(100, [3, 50], [1, 2])
    b = SparseGapArray(100, [50, 99], [4, 1])
    merged = merge_gap(a, b)

    assert not merged.is_dense
    assert list(merged.iter_nonzero()) == [(3, 1), (50, 6), (99, 1)]

    dense = merge_gap(GapArray([5, 0, 1]), SparseGapArray(3, [1], [2]))
    assert dense.is_dense
    assert dense == GapArray([5, 2, 1])

    assert merge_gap(a, b, force_dense=True) == merged.to_dense()
    with pytest.raises(ValueError):
        merge_gap(a, GapArray([1]))


def test_densify():
    assert densify(SparseGapArray(4, [2], [7])) == GapArray([0, 0, 7, 0])


@pytest.mark.parametrize("key_limit", [1, 2, 10, 257, 100000])
def test_radix_sort(rng, key_limit):
    values = rng.integers(0, key_limit, 3001)

    assert bucket_count_for(key_limit) ** 2 >= key_limit
    assert np.array_equal(radix_sort(values, key_limit), np.sort(values))
    assert np.array_equal(radix_sort(values, key_limit, interval_bounds(3001, 4), serial_run), np.sort(values))


def test_radix_sort_short_inputs():
    assert radix_sort([], 5).tolist() == []
    assert radix_sort([3], 5).tolist() == [3]


def test_interval_bounds():
    assert interval_bounds(10, 3) == [(0, 3), (3, 6), (6, 10)]
    assert interval_bounds(2, 5) == [(0, 1), (1, 2)]
    assert interval_bounds(0, 3) == [(0, 0)]


def test_default_buffer_capacity():
    assert default_buffer_capacity(1) == 1024
    assert default_buffer_capacity(1 << 20) == max(1024, (1 << 20) // 400)


@pytest.mark.parametrize("external, capacity, workers", [(True, 7, 1), (True, 64, 3), (True, None, 1), (False, None, 1)])
def test_accumulator_counts_increments(rng, external, capacity, workers):
    length, total = 50, 1000
    indices = rng.integers(0, length, total)
    accumulator = GapAccumulator(length, total, capacity, external, workers=workers, run=serial_run)

    for index in indices.tolist():
        accumulator.increment(index)

    gap = accumulator.finalize()

    assert gap.is_dense
    assert np.array_equal(gap.values, np.bincount(indices, minlength=length))


def test_accumulator_pending_sums_are_distinct_powers(rng):
    accumulator = GapAccumulator(20, 10 * 37, capacity=10)

    for index in rng.integers(0, 20, 10 * 37).tolist():
        accumulator.increment(index)

    assert accumulator.flushes == 37
    assert sorted(accumulator.pending) == [10, 40, 320]
    assert accumulator.finalize().total == 370


@pytest.mark.parametrize("spread", [10, 2000])
def test_accumulator_pending_footprint_is_linear(rng, spread):
    length, total = 2000, 20000
    accumulator = GapAccumulator(length, total, capacity=100)

    for index in rng.integers(0, spread, total).tolist():
        accumulator.increment(index)

    assert accumulator.flushes == 200
    assert accumulator.finalize().total == total
    assert 0 < accumulator.peak_pending_bits <= 8 * (total + length)


def test_accumulator_checks_sum_and_range():
    accumulator = GapAccumulator(4, 3, capacity=2)
    accumulator.increment(1)

    with pytest.raises(IndexError):
        accumulator.increment(4)
    with pytest.raises(GapSumError):
        accumulator.finalize()
    with pytest.raises(ValueError):
        GapAccumulator(0, 0)


def test_accumulator_with_no_increments():
    assert GapAccumulator(3, 0).finalize() == GapArray([0, 0, 0])


def test_accumulator_releases_tracked_memory():
    tracker = MemoryTracker()
    accumulator = GapAccumulator(10, 1, capacity=16, tracker=tracker)
    accumulator.increment(3)
    accumulator.finalize()

    assert tracker.peak >= 16 * 8
    assert tracker.current == 0


def test_gap_statistics():
    stats = gap_statistics(GapArray([2, 0, 1, 0]))

    assert stats["length"] == 4
    assert stats["total"] == 3
    assert stats["k"] == 2
    assert stats["dense_bits"] == 8
    assert stats["dense_ratio"] == 8 / 12
    assert stats["sparse_bits"] == SparseGapArray(4, [0, 2], [2, 1]).encoded_bits()
    assert 0 < stats["sparse_ratio"] <= 1


def test_memory_sink_builders():
    dense = memory_sink(True, 3)
    dense.add(1, 4)
    sparse = memory_sink(False, 3)
    sparse.add(2, 1)

    assert dense.close() == GapArray([0, 4, 0])
    assert sparse.close() == SparseGapArray(3, [2], [1])
