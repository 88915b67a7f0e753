import numpy as np
import pytest
from nano_bwt.errors import RepetitionScanError
from nano_bwt.textmodel import Text, plan_blocks
from nano_bwt.periodicity import compute_repetition_info
from nano_bwt.blocksort import (suffix_array, lcp_array, sort_block, extend_block, filtered_order, repetition_end,
                                MAX_WORKING_FACTOR)
from nano_bwt.oracle import naive_circular_sa, naive_block_lcp
from tests.conftest import random_text, fibonacci_text

REPETITIVE = [
    b"c" + b"ab" * 30 + b"d" + b"ab" * 3,
    b"xy" + b"a" * 40 + b"b",
    b"abcabcabcabcabcabcabd" * 2 + b"e",
    b"aab" * 12 + b"b",
]


def naive_suffix_array(symbols: bytes) -> list[int]:
    return sorted(range(len(symbols)), key=lambda i: symbols[i:])


def naive_lcp(symbols: bytes, sa: list[int]) -> list[int]:
    lcp = [0]
    for a, b in zip(sa, sa[1:]):
        length = 0
        while a + length < len(symbols) and b + length < len(symbols) and symbols[a + length] == symbols[b + length]:
            length += 1
        lcp.append(length)
    return lcp


def check_blocks(text: bytes, b_target: int, isa_rate: int = 3) -> None:
    t = Text(text)
    plan = plan_blocks(t.n, b_target)
    repinfo = compute_repetition_info(t, plan)
    if repinfo.is_power:
        return

    order = naive_circular_sa(text)
    rank = {position: r for r, position in enumerate(order)}

    for block, (start, end) in enumerate(plan):
        result = sort_block(t, plan, block, repinfo, isa_rate)
        expected = [p for p in order if start <= p < end]

        assert result.sa.tolist() == expected
        assert result.corrected_lcp().tolist() == naive_block_lcp(text, (start, end))
        assert [result.lcp_at(j) for j in range(len(result))] == naive_block_lcp(text, (start, end))
        assert result.bwt.tobytes() == bytes(text[p - 1] for p in expected)
        assert result.first_rank == expected.index(start)
        assert result.gt.tolist() == [int(rank[p] > rank[start]) for p in range(start + 1, end)]

        positions = [p for p in range(start, end) if p % isa_rate == 0]
        assert sorted(result.isa_samples[:, 0].tolist()) == positions
        assert all(expected[r] == p for p, r in result.isa_samples.tolist())
        assert result.isa_samples[:, 1].tolist() == sorted(result.isa_samples[:, 1].tolist())

        assert len(extend_block(t, plan, block, repinfo).symbols) <= MAX_WORKING_FACTOR * plan.b


@pytest.mark.parametrize("symbols", [b"banana", b"mississippi", b"aaaa", b"abcabcab", b"a", b"\x00\xff\x00"])
def test_suffix_array_examples(symbols):
    sa = suffix_array(np.frombuffer(symbols, dtype=np.uint8))

    assert sa.tolist() == naive_suffix_array(symbols)
    assert lcp_array(symbols, sa).tolist() == naive_lcp(symbols, sa.tolist())


def test_suffix_array_of_random_strings(rng):
    for sigma in (1, 2, 4, 26, 256):
        symbols = rng.integers(0, sigma, 400, dtype=np.uint8).tobytes()
        sa = suffix_array(symbols)

        assert sa.tolist() == naive_suffix_array(symbols)
        assert lcp_array(symbols, sa).tolist() == naive_lcp(symbols, sa.tolist())


def test_suffix_array_of_empty_string():
    assert suffix_array(b"").size == 0


def test_filtered_order_keeps_block_suffixes():
    offsets, lcp, mismatch = filtered_order(np.frombuffer(b"banana", dtype=np.uint8), 3)

    assert offsets.tolist() == [1, 0, 2]
    assert lcp.tolist() == [0, 0, 0]
    assert mismatch.tolist() == [0, 1, 2]


def test_banana_blocks():
    text = Text(b"banana")
    plan = plan_blocks(6, 3)
    repinfo = compute_repetition_info(text, plan)
    left = sort_block(text, plan, 0, repinfo)
    right = sort_block(text, plan, 1, repinfo)

    assert left.sa.tolist() == [1, 0, 2]
    assert left.bwt.tobytes() == b"baa"
    assert right.sa.tolist() == [5, 3, 4]
    assert right.bwt.tobytes() == b"nna"
    assert left.first_rank == 1
    assert left.gt.tolist() == [0, 1]


@pytest.mark.parametrize("text", REPETITIVE)
def test_sort_block_with_generated_repetitions(text):
    for b_target in (2, 3, 4, 5, 7, 9):
        check_blocks(text, b_target)


def test_generated_repetition_is_cut():
    text = Text(REPETITIVE[0])
    plan = plan_blocks(text.n, 4)
    repinfo = compute_repetition_info(text, plan)
    cut = [extend_block(text, plan, block, repinfo) for block in range(plan.nu)]

    assert any(extended.cut is not None for extended in cut)
    assert any(extended.corr_offset is not None for extended in cut)


def test_sort_block_on_random_texts(rng):
    for _ in range(150):
        n = int(rng.integers(2, 60))
        sigma = int(rng.choice([2, 3, 4]))
        check_blocks(random_text(rng, n, sigma), int(rng.integers(2, n + 1)))


@pytest.mark.parametrize("n", [13, 21, 34, 50])
def test_sort_block_on_fibonacci_strings(n):
    for b_target in range(2, n + 1, 3):
        check_blocks(fibonacci_text(n), b_target)


def test_repetition_end_of_undetected_power_raises():
    text = Text(b"aaaa")
    plan = plan_blocks(4, 2)
    repinfo = compute_repetition_info(text, plan)

    with pytest.raises(RepetitionScanError):
        repetition_end(text, plan, repinfo, 0)


def test_lcp_at_out_of_range():
    text = Text(b"banana")
    plan = plan_blocks(6, 3)
    result = sort_block(text, plan, 0, compute_repetition_info(text, plan))

    with pytest.raises(IndexError):
        result.lcp_at(3)
