import numpy as np
from nano_bwt.textmodel import Text
from nano_bwt.succinct import build_huffman, build_wavelet
from nano_bwt.gaparray import GapAccumulator
from nano_bwt.blocksort import BlockSortResult
from nano_bwt.merge.SortedSegment import SortedSegment
from nano_bwt.merge.ForwardSearch import forward_rank
from nano_bwt.merge.BackwardSearch import MergeInputs, compute_gap
from nano_bwt.merge.StreamMerge import interleave, left_positions, merge_isa, merged_first_rank


def merged_lcp(text: Text, sa: np.ndarray, from_left: np.ndarray, left_lcp: np.ndarray, right_lcp: np.ndarray) -> np.ndarray:
    """LCP array of a merged order. Neighbours from the same side were neighbours on that side too, so their value is
    copied. Neighbours from different sides are compared on the text
    """
    lcp = np.zeros(len(sa), dtype=np.int64)
    lcp[from_left] = left_lcp
    lcp[~from_left] = right_lcp

    for j in (np.flatnonzero(from_left[1:] != from_left[:-1]) + 1).tolist():
        lcp[j] = text.compare_suffixes(int(sa[j - 1]), int(sa[j]))[0]

    lcp[0] = 0
    return lcp


def merge_block_results(text: Text, left: BlockSortResult, right: BlockSortResult) -> BlockSortResult:
    """Merges two adjacent sorted blocks entirely in memory, including their suffix and LCP arrays

    Args:
        text (Text): Text, not a power
        left (BlockSortResult): Block [s, e)
        right (BlockSortResult): Block [e, f)

    Returns:
        BlockSortResult: Sorted block [s, f) with exact LCP values
    """
    index = build_wavelet(left.bwt, build_huffman(dict(enumerate(np.bincount(left.bwt, minlength=256).tolist()))))
    start_rank = forward_rank(text, left, right.end - 1)
    inputs = MergeInputs(text, SortedSegment.from_block(left), SortedSegment.from_block(right), index, start_rank)
    accumulator = GapAccumulator(left.length + 1, right.length, external=False)
    gap, right_gt = compute_gap(inputs, accumulator)

    sa = interleave(left.sa, right.sa, gap.values)
    from_left = np.zeros(len(sa), dtype=bool)
    from_left[left_positions(gap.values)] = True
    lcp = merged_lcp(text, sa, from_left, left.corrected_lcp(), right.corrected_lcp())

    return BlockSortResult(left.start, sa, lcp, np.zeros(len(sa), dtype=bool), None,
                           interleave(left.bwt, right.bwt, gap.values),
                           np.concatenate((left.gt, right_gt)).astype(np.uint8),
                           merge_isa(left.isa_samples, right.isa_samples, gap),
                           merged_first_rank(left.first_rank, gap))
