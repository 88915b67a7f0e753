import logging
from math import ceil
from typing import NamedTuple
import numpy as np
from nano_bwt.errors import RepetitionScanError
from nano_bwt.textmodel import Text, BlockPlan
from nano_bwt.periodicity import RepetitionInfo
from nano_bwt.blocksort.SuffixArray import suffix_array, lcp_array
from nano_bwt.blocksort.BlockSortResult import BlockSortResult

logger = logging.getLogger(__name__)

MAX_WORKING_FACTOR = 6


class ExtendedBlock(NamedTuple):
    """Finite working string for one block. When a long repetition was shortened, `cut` is the offset in `symbols` where
    `excised` symbols of the repetition were removed and corr_offset is where the repetition breaks in the next block
    """
    symbols: np.ndarray
    corr_offset: int | None
    cut: int | None
    excised: int


def repetition_end(text: Text, plan: BlockPlan, repinfo: RepetitionInfo, block: int) -> int:
    """First position e after the block end where the repetition generated by the block breaks, i.e. the first
    e >= block end with t̃[e] != t̃[e - p]. Positions are unrolled, so e may exceed n.\n
    The blocks from the successor up to next_break all propagate p and their windows overlap, so the scan can start at
    the last of them.

    Args:
        text (Text): Text
        plan (BlockPlan): Block plan
        repinfo (RepetitionInfo): Repetition analysis
        block (int): Generating block

    Raises:
        RepetitionScanError: If the repetition never breaks, which can only happen for a power that wasn't detected

    Returns:
        int: The break position
    """
    successor = plan.successor(block)
    period = repinfo.propagated[successor]
    end = plan.start(block) + plan.length(block)
    stop = int(repinfo.next_break[successor])

    if stop == plan.nu:
        raise RepetitionScanError(f"period {period} generated by block {block} is propagated by every block")

    last = (stop - 1) % plan.nu
    position = max(end, end + (plan.start(last) - plan.start(successor)) % text.n)
    chunk = 64

    while position - end <= 2 * text.n:
        ahead = text.window(position, chunk)
        behind = text.window(position - period, chunk)
        mismatch = np.flatnonzero(ahead != behind)

        if mismatch.size:
            return position + int(mismatch[0])

        position += chunk
        chunk *= 2

    raise RepetitionScanError(f"repetition of period {period} after block {block} scanned past {2 * text.n} symbols")


def extend_block(text: Text, plan: BlockPlan, block: int, repinfo: RepetitionInfo, length: int = None) -> ExtendedBlock:
    """Builds the finite working string whose suffix order at offsets [0, block length) equals the circular order of the
    block's suffixes.\n
    If the block generates a period p shorter than itself, the repetition running into the next block is kept for
    2 + ⌈b / p⌉ periods and then continues with the p symbols where it ends. Otherwise a plain window of the circular
    text is used, 2b symbols long unless `length` asks for more.

    Args:
        text (Text): Text, not a power
        plan (BlockPlan): Block plan
        block (int): Block index
        repinfo (RepetitionInfo): Repetition analysis
        length (int, optional): Length of the plain window. Defaults to 2b.

    Raises:
        RepetitionScanError: If the repetition scan runs past the text
        AssertionError: If the working string exceeds 6b symbols

    Returns:
        ExtendedBlock: The working string
    """
    start, size = plan.start(block), plan.length(block)
    end = start + size
    period = repinfo.propagated[plan.successor(block)]
    limit = MAX_WORKING_FACTOR * plan.b

    if repinfo.generates[block] and period < size:
        stop = repetition_end(text, plan, repinfo, block)
        run_start = end - period
        copies = (stop - run_start) // period
        keep = 2 + ceil(plan.b / period)

        if copies > keep:
            cut = run_start + keep * period - start
            resume = run_start + copies * period
            symbols = np.concatenate((text.window(start, cut), text.window(resume, period)))
            extended = ExtendedBlock(symbols, stop - end, cut, resume - start - cut)
        else:
            extended = ExtendedBlock(text.window(start, stop + 1 - start), None, None, 0)
    else:
        extended = ExtendedBlock(text.window(start, 2 * plan.b if length is None else length), None, None, 0)

    if len(extended.symbols) > limit:
        raise AssertionError(f"working string of {len(extended.symbols)} symbols exceeds {limit} for block {block}")

    return extended


def filtered_order(symbols: np.ndarray, size: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Sorts the suffixes of the working string and keeps the ones starting inside the block

    Args:
        symbols (np.ndarray): Working string
        size (int): Block length

    Returns:
        tuple[np.ndarray, np.ndarray, np.ndarray]: Offsets in suffix order, LCP between neighbours (minimum over the
        dropped suffixes in between) and the position in the working string where each neighbour pair first differs
        as seen from the later-starting suffix
    """
    sa = suffix_array(symbols)
    lcp = lcp_array(symbols, sa)
    kept = np.flatnonzero(sa < size)
    offsets = sa[kept]

    if len(kept) > 1:
        between = np.minimum.reduceat(lcp[:kept[-1] + 1], kept[:-1] + 1)
        filtered = np.concatenate(([0], between)).astype(np.int64)
    else:
        filtered = np.zeros(len(kept), dtype=np.int64)

    mismatch = np.zeros(len(kept), dtype=np.int64)
    if len(kept) > 1:
        mismatch[1:] = np.maximum(offsets[:-1], offsets[1:]) + filtered[1:]

    return offsets, filtered, mismatch


def sort_block(text: Text, plan: BlockPlan, block: int, repinfo: RepetitionInfo, isa_rate: int = 32) -> BlockSortResult:
    """Sorts the circular suffixes of one block.\n
    Plain windows start at 2b symbols. If two neighbouring suffixes run into the end of the window undecided, the
    window grows to len + b + 2d for the largest undecided offset distance d, and finally to len + b + 2(len - 1),
    which always suffices for a block that doesn't generate a shorter period.

    Args:
        text (Text): Text, not a power
        plan (BlockPlan): Block plan
        block (int): Block index
        repinfo (RepetitionInfo): Repetition analysis
        isa_rate (int, optional): Sample every position divisible by it. Defaults to 32.

    Raises:
        AssertionError: If the order can't be decided, which means the repetition analysis is wrong

    Returns:
        BlockSortResult: Sorted block
    """
    start, size = plan.start(block), plan.length(block)
    extended = extend_block(text, plan, block, repinfo)
    offsets, lcp, mismatch = filtered_order(extended.symbols, size)
    undecided = np.flatnonzero(mismatch[1:] >= len(extended.symbols)) + 1

    if undecided.size and extended.cut is None and extended.corr_offset is None:
        tried = len(extended.symbols)
        distance = int(np.max(np.abs(offsets[undecided] - offsets[undecided - 1])))

        for length in (size + plan.b + 2 * distance, size + plan.b + 2 * (size - 1)):
            if length <= tried:
                continue
            logger.debug("block %d undecided with window %d, retrying with %d", block, tried, length)
            extended = extend_block(text, plan, block, repinfo, length)
            offsets, lcp, mismatch = filtered_order(extended.symbols, size)
            undecided = np.flatnonzero(mismatch[1:] >= len(extended.symbols)) + 1
            tried = length
            if not undecided.size:
                break

    if undecided.size:
        raise AssertionError(f"block {block} has {undecided.size} undecided suffix pairs")

    if extended.cut is not None:
        flags = mismatch >= extended.cut
        flags[0] = False
    else:
        flags = np.zeros(size, dtype=bool)

    sa = offsets + start
    ranks = np.empty(size, dtype=np.int64)
    ranks[offsets] = np.arange(size)
    bwt = text.data[(sa - 1) % text.n]
    gt = (ranks[1:] > ranks[0]).astype(np.uint8)

    sampled = np.arange(-start % isa_rate, size, isa_rate)
    samples = np.stack((sampled + start, ranks[sampled]), axis=1) if sampled.size else np.zeros((0, 2), dtype=np.int64)
    samples = samples[np.argsort(samples[:, 1], kind="stable")]

    logger.debug("sorted block %d [%d, %d) with a working string of %d symbols", block, start, start + size,
                 len(extended.symbols))
    return BlockSortResult(start, sa.astype(np.int64), lcp, flags, extended.corr_offset, bwt, gt,
                           samples.astype(np.int64), int(ranks[0]))
