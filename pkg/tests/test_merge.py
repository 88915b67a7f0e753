import numpy as np
import pytest
from nano_bwt.errors import GapSumError
from nano_bwt.textmodel import Text, plan_blocks
from nano_bwt.periodicity import compute_repetition_info
from nano_bwt.blocksort import sort_block
from nano_bwt.succinct import build_huffman, build_wavelet
from nano_bwt.gaparray import GapArray, SparseGapArray, GapAccumulator
from nano_bwt.merge import (SortedSegment, SparseTableRMQ, BlockSearcher, forward_rank, forward_start_rank,
                            MergeInputs, compute_gap, merge_streams, merge_gt, merge_isa, merged_first_rank,
                            interleave, left_positions, merge_block_results)
from nano_bwt.oracle import naive_circular_sa, naive_gap, naive_block_lcp
from tests.conftest import random_text, fibonacci_text


class ListSink:
    def __init__(self) -> None:
        self.data = bytearray()

    def write(self, symbols) -> None:
        self.data.extend(bytes(symbols))


def sorted_blocks(text: bytes, b_target: int):
    t = Text(text)
    plan = plan_blocks(len(text), b_target)
    repinfo = compute_repetition_info(t, plan)
    if repinfo.is_power:
        return t, None
    return t, [sort_block(t, plan, block, repinfo, isa_rate=2) for block in range(plan.nu)]


def wavelet_of(bwt: np.ndarray):
    return build_wavelet(bwt, build_huffman(dict(enumerate(np.bincount(bwt, minlength=256).tolist()))))


def gap_of(text: Text, left, right) -> tuple[GapArray, np.ndarray]:
    inputs = MergeInputs(text, SortedSegment.from_block(left), SortedSegment.from_block(right), wavelet_of(left.bwt),
                         forward_rank(text, left, right.end - 1))
    return compute_gap(inputs, GapAccumulator(left.length + 1, right.length, capacity=5))


def check_merged(text: bytes, result, start: int, end: int) -> None:
    order = [p for p in naive_circular_sa(text) if start <= p < end]
    rank = {p: r for r, p in enumerate(order)}

    assert result.sa.tolist() == order
    assert result.corrected_lcp().tolist() == naive_block_lcp(text, (start, end))
    assert result.bwt.tobytes() == bytes(text[p - 1] for p in order)
    assert result.first_rank == rank[start]
    assert result.gt.tolist() == [int(rank[p] > rank[start]) for p in range(start + 1, end)]
    assert all(rank[p] == r for p, r in result.isa_samples.tolist())
    assert sorted(result.isa_samples[:, 0].tolist()) == [p for p in range(start, end) if p % 2 == 0]


def test_banana_gap_and_merge():
    text, (left, right) = sorted_blocks(b"banana", 3)
    gap, right_gt = gap_of(text, left, right)

    assert gap.values.tolist() == [2, 0, 1, 0]
    assert gap.values.tolist() == naive_gap(b"banana", 3).tolist()
    assert merge_streams(left.bwt, right.bwt, gap).tobytes() == b"nnbaaa"
    assert merged_first_rank(left.first_rank, gap) == 3
    assert right_gt.tolist() == [0, 1, 0]

    merged = merge_block_results(text, left, right)
    assert merged.sa.tolist() == [5, 3, 1, 0, 4, 2]
    assert merged.bwt.tobytes() == b"nnbaaa"


def test_gap_matches_naive_on_random_texts(rng):
    for _ in range(60):
        n = int(rng.integers(4, 50))
        data = random_text(rng, n, int(rng.choice([2, 3, 26])))
        text, blocks = sorted_blocks(data, int(rng.integers(2, n // 2 + 1)))
        if blocks is None:
            continue
        for left, right in zip(blocks, blocks[1:]):
            gap, _ = gap_of(text, left, right)
            assert gap.values.tolist() == naive_gap(data, left.end, left.start, right.end).tolist()


@pytest.mark.parametrize("data", [fibonacci_text(40), b"c" + b"ab" * 20 + b"d" + b"ab" * 3, b"xy" + b"a" * 30 + b"b",
                                  b"mississippi", b"abracadabra"])
def test_merge_block_results_sequentially(data):
    for b_target in (2, 3, 5):
        text, blocks = sorted_blocks(data, b_target)
        if blocks is None:
            continue
        merged = blocks[0]
        for block in blocks[1:]:
            merged = merge_block_results(text, merged, block)
            check_merged(data, merged, 0, merged.end)


def test_merge_block_results_of_merged_halves(rng):
    for _ in range(30):
        n = int(rng.integers(8, 60))
        data = random_text(rng, n, int(rng.choice([2, 4])))
        text, blocks = sorted_blocks(data, max(2, n // 4))
        if blocks is None or len(blocks) < 4:
            continue
        left = merge_block_results(text, blocks[0], blocks[1])
        right = merge_block_results(text, blocks[2], blocks[3])
        check_merged(data, merge_block_results(text, left, right), 0, blocks[3].end)


def test_forward_rank_counts_smaller_suffixes(rng):
    for _ in range(40):
        n = int(rng.integers(6, 40))
        data = random_text(rng, n, int(rng.choice([2, 3])))
        text, blocks = sorted_blocks(data, int(rng.integers(2, n // 2 + 1)))
        if blocks is None:
            continue
        rank = {p: r for r, p in enumerate(naive_circular_sa(data))}
        block = blocks[0]
        for position in range(block.end, n):
            expected = sum(1 for p in range(block.start, block.end) if rank[p] < rank[position])
            assert forward_rank(text, block, position) == expected
            assert BlockSearcher(text, block).rank(position) == expected
        assert forward_start_rank(text, blocks[:-1], n - 1) == sum(1 for p in range(blocks[-1].start) if rank[p] < rank[n - 1])


def test_sparse_table_rmq(rng):
    values = rng.integers(0, 100, 77)
    rmq = SparseTableRMQ(values)

    for low in range(77):
        for high in range(low + 1, 78, 5):
            assert rmq.query(low, high) == values[low:high].min()


def test_merge_inputs_validation():
    text, (left, right) = sorted_blocks(b"banana", 3)
    index = wavelet_of(left.bwt)

    with pytest.raises(ValueError):
        MergeInputs(text, SortedSegment.from_block(right), SortedSegment.from_block(left), index, 0)
    with pytest.raises(ValueError):
        MergeInputs(text, SortedSegment.from_block(left), SortedSegment.from_block(right), index, 4)


def test_merge_streams_streaming_path():
    left, right = np.frombuffer(b"bna", dtype=np.uint8), np.frombuffer(b"nna", dtype=np.uint8)
    sparse = SparseGapArray(4, [0, 2], [2, 1])
    sink = ListSink()

    assert merge_streams(iter(b"bna"), iter(b"nna"), GapArray([2, 0, 1, 0])).tobytes() == b"nnbnaa"
    assert merge_streams(left, right, sparse).tobytes() == b"nnbnaa"
    assert merge_streams(left, right, GapArray([2, 0, 1, 0]), sink) is sink
    assert bytes(sink.data) == b"nnbnaa"


def test_merge_streams_detects_bad_gaps():
    left, right = np.frombuffer(b"ab", dtype=np.uint8), np.frombuffer(b"cd", dtype=np.uint8)

    with pytest.raises(GapSumError):
        merge_streams(left, right, GapArray([1, 0, 0]))
    with pytest.raises(GapSumError):
        merge_streams(iter(b"ab"), iter(b"cd"), GapArray([3, 0, 0]))
    with pytest.raises(GapSumError):
        merge_streams(iter(b"ab"), iter(b"cd"), GapArray([1, 0, 0]))


def test_interleave_and_left_positions():
    values = np.array([1, 0, 2])

    assert left_positions(values).tolist() == [1, 2]
    assert interleave(np.array([10, 20]), np.array([1, 2, 3]), values).tolist() == [1, 10, 20, 2, 3]


def test_merge_isa_and_gt():
    left = np.array([[0, 0], [2, 2]])
    right = np.array([[4, 1]])
    gap = GapArray([1, 0, 1, 0])

    assert merge_isa(left, right, gap).tolist() == [[0, 1], [4, 3], [2, 4]]
    assert merge_gt(np.array([0, 1]), np.array([1, 0])).tolist() == [0, 1, 1, 0]
    assert merged_first_rank(1, gap) == 2
