import logging
import numpy as np
from nano_bwt.textmodel import Text
from nano_bwt.succinct import WaveletTree
from nano_bwt.merge.SortedSegment import SortedSegment

logger = logging.getLogger(__name__)


class MergeInputs:
    """What backward search over the right segment needs from the left one: its rank index, its first suffix and the
    symbols just outside it, plus the start rank of the right segment's last suffix.\n
    The left BWT is the BWT of the block on its own, so two of its entries differ from what the merged text needs: the
    left's first suffix is preceded by pre_symbol, which lies outside the left, and the suffix preceded by last_symbol is
    the first suffix of the right segment. symbol_counts is corrected for both.
    """

    def __init__(self, text: Text, left: SortedSegment, right: SortedSegment, index: WaveletTree, start_rank: int) -> None:
        """Initializer for MergeInputs

        Args:
            text (Text): Text
            left (SortedSegment): Left segment [s, e)
            right (SortedSegment): Right segment [e, f)
            index (WaveletTree): Rank index over the left BWT
            start_rank (int): Number of left suffixes smaller than the suffix at f - 1

        Raises:
            ValueError: If the segments aren't adjacent or start_rank is out of range
        """
        if left.end != right.start:
            raise ValueError(f"segments [{left.start}, {left.end}) and [{right.start}, {right.end}) aren't adjacent")
        if start_rank < 0 or start_rank > left.length:
            raise ValueError(f"start rank {start_rank} out of range for a left side of {left.length} suffixes")

        self.text: Text = text
        self.left: SortedSegment = left
        self.right: SortedSegment = right
        self.index: WaveletTree = index
        self.start_rank: int = start_rank
        self.pre_symbol: int = text.circular_char(left.start - 1 + text.n)
        self.last_symbol: int = text.circular_char(left.end - 1)

        symbols = np.arange(256)
        self.segment_counts: np.ndarray = index.symbol_counts[:256] - (self.pre_symbol < symbols) + (self.last_symbol < symbols)

    def step(self, rank: int, symbol: int, gt_bit: int) -> int:
        """Rank among the left suffixes of symbol·X, given the rank of X

        Args:
            rank (int): Number of left suffixes smaller than X
            symbol (int): Symbol preceding X
            gt_bit (int): Whether X is greater than the first suffix of the right segment

        Returns:
            int: The new rank
        """
        stepped = int(self.segment_counts[symbol]) + self.index.rank_prefix(symbol, rank)

        if symbol == self.pre_symbol and self.left.first_rank < rank:
            stepped -= 1
        if symbol == self.last_symbol and gt_bit:
            stepped += 1

        return stepped


def backward_search(inputs: MergeInputs, position: int, rank: int, steps: int, accumulator, right_gt: np.ndarray) -> None:
    """Runs `steps` backward search steps over the right suffixes position, position - 1, ... and counts each of them
    in the gap accumulator at its rank. right_gt[q - e] is set to whether the suffix at q is greater than the merged
    segment's first suffix, i.e. whether its rank exceeds the left first rank

    Args:
        inputs (MergeInputs): Merge inputs
        position (int): Rightmost right suffix of this run
        rank (int): Its rank among the left suffixes
        steps (int): Number of suffixes to process
        accumulator: GapAccumulator of length b_l + 1
        right_gt (np.ndarray): Output bits, one per right suffix
    """
    if steps <= 0:
        return

    right_start = inputs.right.start
    low = position - steps + 1

    if low < right_start:
        raise ValueError(f"backward search from {position} for {steps} steps leaves the right segment")

    symbols = inputs.text.window(low - 1, steps).tolist()
    gt_bits = inputs.right.gt_range(low - right_start, position - right_start).tolist()
    first_rank = inputs.left.first_rank

    for q in range(position, low - 1, -1):
        accumulator.increment(rank)
        right_gt[q - right_start] = rank > first_rank

        if q > low:
            rank = inputs.step(rank, symbols[q - low], gt_bits[q - low - 1])


def compute_gap(inputs: MergeInputs, accumulator) -> tuple[object, np.ndarray]:
    """Backward search over the whole right segment, from its last suffix to its first

    Args:
        inputs (MergeInputs): Merge inputs
        accumulator: GapAccumulator of length b_l + 1 expecting b_r increments

    Returns:
        tuple[object, np.ndarray]: The dense gap array and the gt bits of the right suffixes relative to the merged
        segment's first suffix, in position order
    """
    right = inputs.right
    right_gt = np.zeros(right.length, dtype=np.uint8)
    backward_search(inputs, right.end - 1, inputs.start_rank, right.length, accumulator, right_gt)
    gap = accumulator.finalize()
    logger.debug("gap for [%d, %d) + [%d, %d): length %d, total %d", inputs.left.start, inputs.left.end,
                 right.start, right.end, gap.length, gap.total)
    return gap, right_gt
