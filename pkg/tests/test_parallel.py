import numpy as np
import pytest
from nano_bwt.errors import GapSumError
from nano_bwt.textmodel import Text, plan_blocks
from nano_bwt.periodicity import compute_repetition_info
from nano_bwt.blocksort import sort_block
from nano_bwt.succinct import build_huffman, build_wavelet
from nano_bwt.gaparray import GapArray, GapAccumulator, radix_sort
from nano_bwt.merge import MergeInputs, SortedSegment, compute_gap, forward_rank, merge_streams
from nano_bwt.mergetree import run, run_skewed
from nano_bwt.parallel import (WorkSplit, split_evenly, clamp_workers, mapper, worker_pool, parallel_wavelet,
                               parallel_gap, parallel_radix_sort, gap_start_positions, split_for_merge,
                               split_search_for, parallel_merge_streams, parallel_block_sort, fine_plan, merge_pieces)
from nano_bwt.extio import write_gap
from nano_bwt.oracle import naive_bwt
from tests.conftest import random_text, fibonacci_text


def huffman_of(symbols: np.ndarray):
    return build_huffman(dict(enumerate(np.bincount(symbols, minlength=256).tolist())))


def test_work_split():
    split = split_evenly(10, 3)

    assert split.ranges == [(0, 3), (3, 6), (6, 10)]
    assert split.total == 10
    assert len(split_evenly(2, 5)) == 2

    with pytest.raises(ValueError):
        WorkSplit([(0, 3), (4, 6)])
    with pytest.raises(ValueError):
        WorkSplit([(0, 3)], [None, None])


@pytest.mark.parametrize("threads, work, minimum, workers", [(4, 10_000, 1024, 4), (4, 2000, 1024, 2), (8, 10, 1024, 1),
                                                             (1, 10_000, 1, 1), (3, 7, 2, 3)])
def test_clamp_workers(threads, work, minimum, workers):
    assert clamp_workers(threads, work, minimum) == workers


def test_mapper_and_pool():
    with worker_pool(1) as executor:
        assert executor is None
        assert mapper(executor)(lambda x: x * x, range(4)) == [0, 1, 4, 9]

    with worker_pool(3) as executor:
        assert mapper(executor)(lambda x: x + 1, range(5)) == [1, 2, 3, 4, 5]

        def fail(x):
            raise KeyError(x)

        with pytest.raises(KeyError):
            mapper(executor)(fail, range(3))


@pytest.mark.parametrize("p", [2, 3, 5])
def test_parallel_wavelet_matches_serial(rng, p):
    symbols = rng.integers(0, 7, 500).astype(np.uint8)
    code = huffman_of(symbols)
    serial = build_wavelet(symbols, code)

    with worker_pool(p) as executor:
        parallel = parallel_wavelet(symbols, code, p, executor)

    for symbol in range(7):
        for position in range(0, 501, 37):
            assert parallel.rank_prefix(symbol, position) == serial.rank_prefix(symbol, position)


def test_gap_start_positions():
    assert gap_start_positions(10, 10, 3) == [(19, 4), (15, 4), (11, 2)]
    assert gap_start_positions(10, 4, 1) == [(13, 4)]
    assert gap_start_positions(0, 2, 4) == [(1, 1), (0, 1)]
    assert gap_start_positions(5, 0, 2) == []


@pytest.mark.parametrize("p", [2, 3, 4])
def test_parallel_gap_matches_serial(rng, p):
    data = random_text(rng, 120, 3)
    text = Text(data)
    plan = plan_blocks(text.n, 60)
    repinfo = compute_repetition_info(text, plan)
    left, right = (sort_block(text, plan, block, repinfo, 8) for block in range(2))
    index = build_wavelet(left.bwt, huffman_of(left.bwt))
    inputs = MergeInputs(text, SortedSegment.from_block(left), SortedSegment.from_block(right), index,
                         forward_rank(text, left, right.end - 1))

    serial, serial_gt = compute_gap(inputs, GapAccumulator(left.length + 1, right.length, capacity=16))
    starts = [forward_rank(text, left, position) for position, _ in gap_start_positions(right.start, right.length, p)]

    with worker_pool(p) as executor, worker_pool(p) as sort_executor:
        accumulator = GapAccumulator(left.length + 1, right.length, 16, True, workers=p, run=mapper(sort_executor))
        gap, right_gt = parallel_gap(inputs, accumulator, p, starts, executor=executor)

    assert gap == serial
    assert right_gt.tolist() == serial_gt.tolist()

    by_callable, _ = parallel_gap(inputs, GapAccumulator(left.length + 1, right.length, external=False), p,
                                  rank_of=lambda position: forward_rank(text, left, position))
    assert by_callable == serial

    with pytest.raises(ValueError):
        parallel_gap(inputs, GapAccumulator(left.length + 1, right.length), p)


def test_parallel_radix_sort(rng):
    values = rng.integers(0, 1000, 777)

    with worker_pool(4) as executor:
        assert parallel_radix_sort(values, 1000, 4, executor).tolist() == sorted(values.tolist())

    assert radix_sort(values, 1000).tolist() == sorted(values.tolist())


def test_split_for_merge_banana():
    split = split_for_merge(GapArray([2, 0, 1, 0]), 3, 3, 3, 2)

    assert split.ranges == [(0, 2), (2, 4), (4, 6)]
    assert split.starts == [(0, 0, 0), (0, 2, 2), (2, 0, 2)]


def test_split_for_merge_rounds_to_codec_blocks(caplog):
    split = split_for_merge(GapArray([5, 3]), 1, 8, 4, 4)

    assert split.ranges == [(0, 4), (4, 8), (8, 9)]
    assert split.starts == [(0, 0, 0), (0, 4, 4), (1, 2, 7)]
    assert "instead of 4" in caplog.text

    with pytest.raises(GapSumError):
        split_for_merge(GapArray([5, 2]), 1, 8, 2, 1)


@pytest.mark.parametrize("p, d", [(2, 1), (3, 4), (4, 7), (8, 1)])
def test_parallel_merge_streams_concatenates_to_serial(rng, p, d):
    left = rng.integers(0, 4, 50).astype(np.uint8)
    right = rng.integers(0, 4, 70).astype(np.uint8)
    values = np.bincount(rng.integers(0, 51, 70), minlength=51)
    gap = GapArray(values)
    expected = merge_streams(left, right, gap)

    split = split_for_merge(gap, 50, 70, p, d)
    with worker_pool(p) as executor:
        parts = parallel_merge_streams(left, right, gap, split, executor=executor)

    assert all((high - low) % d == 0 for low, high in split.ranges[:-1])
    assert np.concatenate(parts).tolist() == expected.tolist()


def test_fine_plan():
    pieces, groups = fine_plan(plan_blocks(10, 5), 3)

    assert list(pieces) == [(0, 2), (2, 5), (5, 7), (7, 10)]
    assert groups == [range(0, 2), range(2, 4)]

    pieces, groups = fine_plan(plan_blocks(3, 3), 4)
    assert list(pieces) == [(0, 3)]


@pytest.mark.parametrize("data", [b"mississippi" * 3 + b"!", fibonacci_text(80), b"ab" * 20 + b"c" + b"ab" * 5])
def test_parallel_block_sort_matches_serial(data):
    text = Text(data)
    plan = plan_blocks(text.n, 12)
    repinfo = compute_repetition_info(text, plan)

    with worker_pool(3) as executor:
        parallel = parallel_block_sort(text, plan, 3, repinfo, 4, executor)

    for block, result in enumerate(parallel):
        serial = sort_block(text, plan, block, repinfo, 4)
        assert result.sa.tolist() == serial.sa.tolist()
        assert result.bwt.tolist() == serial.bwt.tolist()
        assert result.gt.tolist() == serial.gt.tolist()
        assert result.first_rank == serial.first_rank
        assert result.isa_samples.tolist() == serial.isa_samples.tolist()
        assert result.corrected_lcp().tolist() == serial.corrected_lcp().tolist()


def test_merge_pieces_single():
    text = Text(b"banana")
    plan = plan_blocks(6, 6)
    result = sort_block(text, plan, 0, compute_repetition_info(text, plan), 2)

    assert merge_pieces(text, [result]) is result


@pytest.mark.parametrize("threads", [2, 4])
@pytest.mark.parametrize("builder", [run, run_skewed])
def test_threads_give_identical_files(config_factory, tmp_path, rng, threads, builder):
    data = random_text(rng, 300, 4)
    paths = []

    for count in (1, threads):
        path = str(tmp_path / f"{count}.bwt")
        config = config_factory(block_size=40, threads=count, min_worker_items=8, bwt_block_size=16, gap_buffer=8)
        result = builder(data, config, path)
        assert result.read_bwt().tobytes() == naive_bwt(data)
        paths.append(path)

    with open(paths[0], "rb") as serial, open(paths[1], "rb") as parallel:
        assert serial.read() == parallel.read()


def test_threads_with_external_gaps(config_factory, tmp_path):
    data = fibonacci_text(200) + b"c"
    config = config_factory(block_size=25, threads=3, min_worker_items=4, bwt_block_size=8, force_external_gap=True)

    assert run(data, config, str(tmp_path / "out.bwt")).read_bwt().tobytes() == naive_bwt(data)


def test_split_search_choice():
    assert split_search_for(1000, 4) == "tree"
    assert split_search_for(10 ** 9, 8) == "flat"

    with pytest.raises(ValueError):
        split_for_merge(GapArray([2, 0, 1, 0]), 3, 3, 3, 2, search="binary")


@pytest.mark.parametrize("p, d", [(3, 1), (5, 2), (8, 3), (16, 1)])
def test_tree_split_search_matches_flat(rng, p, d):
    values = np.bincount(rng.integers(0, 301, 500), minlength=301)
    gap = GapArray(values)

    flat = split_for_merge(gap, 300, 500, p, d, search="flat")
    with worker_pool(4) as executor:
        tree = split_for_merge(gap, 300, 500, p, d, search="tree", executor=executor)

    assert tree.ranges == flat.ranges
    assert tree.starts == flat.starts


def test_tree_split_search_on_gap_file(tmp_path, rng):
    left = rng.integers(0, 4, 120).astype(np.uint8)
    right = rng.integers(0, 4, 200).astype(np.uint8)
    values = np.bincount(rng.integers(0, 121, 200), minlength=121)
    gap = write_gap(str(tmp_path / "gap.dense"), GapArray(values), restart=8)
    expected = merge_streams(left, right, GapArray(values))

    split = split_for_merge(gap, 120, 200, 7, 2, search="tree")
    with worker_pool(3) as executor:
        parts = parallel_merge_streams(left, right, gap, split, executor=executor)
    gap.close()

    assert len(split) == 7
    assert np.concatenate(parts).tolist() == expected.tolist()
