import numpy as np
from nano_bwt.textmodel import Text


class SparseTableRMQ:
    """Range minimum queries in O(1) after O(n log n) preprocessing. Level k holds the minima of all windows of
    length 2^k
    """

    def __init__(self, values) -> None:
        self.levels: list[np.ndarray] = [np.asarray(values, dtype=np.int64)]
        width = 1

        while 2 * width <= len(self.levels[0]):
            previous = self.levels[-1]
            self.levels.append(np.minimum(previous[:-width], previous[width:]))
            width *= 2

    def query(self, low: int, high: int) -> int:
        """Minimum of values[low:high], low < high
        """
        level = (high - low).bit_length() - 1
        table = self.levels[level]
        return int(min(table[low], table[high - (1 << level)]))


class BlockSearcher:
    """Forward search over one sorted block, using the corrected LCP array to skip symbols that are already known to
    match. Equal circular suffixes are ordered by position, so the pattern must start outside the block
    """

    def __init__(self, text: Text, result) -> None:
        self.text: Text = text
        self.sa: np.ndarray = result.sa
        self.rmq: SparseTableRMQ = SparseTableRMQ(result.corrected_lcp())

    def rank(self, position: int) -> int:
        """Number of the block's circular suffixes smaller than the one at `position`

        Args:
            position (int): Pattern start

        Returns:
            int: Count in [0, block length]
        """
        size = len(self.sa)
        low, high = -1, size
        low_lcp = high_lcp = 0

        while high - low > 1:
            middle = (low + high) // 2
            known = min(low_lcp, high_lcp)

            if low >= 0 and low_lcp >= high_lcp:
                between = self.rmq.query(low + 1, middle + 1)
                if between > low_lcp:
                    low = middle
                    continue
                if between < low_lcp:
                    high, high_lcp = middle, between
                    continue
                known = low_lcp
            elif high < size and high_lcp > low_lcp:
                between = self.rmq.query(middle + 1, high + 1)
                if between > high_lcp:
                    high = middle
                    continue
                if between < high_lcp:
                    low, low_lcp = middle, between
                    continue
                known = high_lcp

            lcp, sign = self.text.compare_suffixes(int(self.sa[middle]), position, known)

            if sign < 0:
                low, low_lcp = middle, lcp
            else:
                high, high_lcp = middle, lcp

        return high


def forward_rank(text: Text, result, position: int) -> int:
    return BlockSearcher(text, result).rank(position)


def forward_start_rank(text: Text, results: list, position: int) -> int:
    """Rank of the circular suffix at `position` among the suffixes of several sorted base blocks: the sum of its ranks
    in every single block

    Args:
        text (Text): Text
        results (list): BlockSortResults of the blocks composing the left side of a merge
        position (int): Pattern start, outside those blocks

    Returns:
        int: Number of smaller suffixes
    """
    return sum(forward_rank(text, result, position) for result in results)
