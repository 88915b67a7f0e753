import numpy as np


def read_range(source, start: int, stop: int) -> np.ndarray:
    if isinstance(source, np.ndarray):
        return source[max(0, start):max(0, stop)]

    return source.read_range(start, stop)


def read_all(source) -> np.ndarray:
    return source if isinstance(source, np.ndarray) else source.read_all()


class SortedSegment:
    """Sorted circular suffixes of a text range [start, start + length): a base block or a merge result.\n
    bwt, gt and isa are either numpy arrays or file readers (BwtFile or MultiPartBwt, GtFile, IsaFile). gt has one bit
    per position start + 1 .. start + length - 1, set iff that suffix is greater than the suffix at start.
    """

    def __init__(self, start: int, length: int, first_rank: int, bwt, gt, isa, node=None) -> None:
        """Initializer for the SortedSegment

        Args:
            start (int): First text position
            length (int): Number of suffixes
            first_rank (int): Rank of the suffix at start among the segment's suffixes
            bwt: Symbols preceding the suffixes in sorted order
            gt: gt bits
            isa: (position, rank) samples in rank order
            node (optional): Merge tree node the segment belongs to. Defaults to None.
        """
        self.start: int = start
        self.length: int = length
        self.first_rank: int = first_rank
        self.bwt = bwt
        self.gt = gt
        self.isa = isa
        self.node = node

    @classmethod
    def from_block(cls, result, node=None) -> "SortedSegment":
        return cls(result.start, result.length, result.first_rank, result.bwt, result.gt, result.isa_samples, node)

    def __len__(self) -> int:
        return self.length

    def __repr__(self) -> str:
        return f"SortedSegment(start={self.start}, length={self.length}, first_rank={self.first_rank}, external={self.external})"

    @property
    def end(self) -> int:
        return self.start + self.length

    @property
    def external(self) -> bool:
        return not isinstance(self.bwt, np.ndarray)

    def bwt_symbols(self) -> np.ndarray:
        return read_all(self.bwt)

    def iter_bwt(self):
        if isinstance(self.bwt, np.ndarray):
            return iter(self.bwt.tolist())

        return self.bwt.open_at(0)

    def gt_range(self, start: int, stop: int) -> np.ndarray:
        return read_range(self.gt, start, stop)

    def gt_bits(self) -> np.ndarray:
        return read_all(self.gt)

    def isa_samples(self) -> np.ndarray:
        return self.isa if isinstance(self.isa, np.ndarray) else self.isa.samples()

    def close(self) -> None:
        for stream in (self.bwt, self.gt, self.isa):
            if not isinstance(stream, np.ndarray):
                stream.close()

    def discard(self) -> None:
        for stream in (self.bwt, self.gt, self.isa):
            if not isinstance(stream, np.ndarray):
                stream.discard()
