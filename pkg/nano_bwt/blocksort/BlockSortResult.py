import numpy as np


class BlockSortResult:
    """Everything block sorting produces for one block [start, start + length).\n
    The LCP array is stored as computed on the working string. Entries whose mismatch fell behind the point where a long
    repetition was cut out are flagged, and lcp_at() corrects them on demand from the suffix array and corr_offset.
    """

    def __init__(self, start: int, sa: np.ndarray, lcp: np.ndarray, corr_flags: np.ndarray, corr_offset: int | None,
                 bwt: np.ndarray, gt: np.ndarray, isa_samples: np.ndarray, first_rank: int) -> None:
        """Initializer for the BlockSortResult

        Args:
            start (int): First text position of the block
            sa (np.ndarray): Absolute start positions in circular suffix order
            lcp (np.ndarray): Stored LCP values, lcp[0] = 0
            corr_flags (np.ndarray): True where lcp needs the lazy correction
            corr_offset (int | None): Offset into the next block where the generated repetition breaks
            bwt (np.ndarray): bwt[j] = t̃[sa[j] - 1]
            gt (np.ndarray): For block positions 1..length-1, 1 iff that suffix is greater than the first one
            isa_samples (np.ndarray): (position, rank) rows in rank order
            first_rank (int): Rank of the block's first suffix within the block
        """
        self.start: int = start
        self.length: int = len(sa)
        self.sa: np.ndarray = sa
        self.lcp: np.ndarray = lcp
        self.corr_flags: np.ndarray = corr_flags
        self.corr_offset: int | None = corr_offset
        self.bwt: np.ndarray = bwt
        self.gt: np.ndarray = gt
        self.isa_samples: np.ndarray = isa_samples
        self.first_rank: int = first_rank
        self._corrected: np.ndarray = None

    def __len__(self) -> int:
        return self.length

    def __repr__(self) -> str:
        return f"BlockSortResult(start={self.start}, length={self.length}, corr_offset={self.corr_offset})"

    @property
    def end(self) -> int:
        return self.start + self.length

    def lcp_at(self, j: int) -> int:
        """Corrected LCP of the suffixes at ranks j - 1 and j

        Args:
            j (int): Rank, 0 <= j < length

        Raises:
            IndexError: If j is out of range

        Returns:
            int: LCP value
        """
        if j < 0 or j >= self.length:
            raise IndexError(f"lcp index {j} out of range for block of length {self.length}")

        if not self.corr_flags[j]:
            return int(self.lcp[j])

        return self.end - int(max(self.sa[j - 1], self.sa[j])) + self.corr_offset

    def corrected_lcp(self) -> np.ndarray:
        if self._corrected is None:
            corrected = self.lcp.copy()
            flagged = np.flatnonzero(self.corr_flags)

            if flagged.size:
                later = np.maximum(self.sa[flagged - 1], self.sa[flagged])
                corrected[flagged] = self.end - later + self.corr_offset

            self._corrected = corrected

        return self._corrected

    def nbytes(self) -> int:
        return int(self.sa.nbytes + self.lcp.nbytes + self.corr_flags.nbytes + self.bwt.nbytes + self.gt.nbytes)
