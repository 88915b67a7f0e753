import numpy as np


class MultiFileIndex:
    """Maps offsets of a sequence stored in several consecutive parts to (part, local offset).\n
    For sparse gap parts the element count of a part doesn't say which gap indices it covers, so two more prefix sum
    tables are kept: the span of gap indices each part represents and its number of non-zero entries.
    """

    def __init__(self, counts, spans=None, nonzero=None) -> None:
        """Initializer for the MultiFileIndex

        Args:
            counts: Elements per part
            spans (optional): Gap indices represented per part, for sparse gap parts. Defaults to None.
            nonzero (optional): Non-zero entries per part, for sparse gap parts. Defaults to None.
        """
        self.counts: np.ndarray = np.asarray(counts, dtype=np.int64)
        self.prefix: np.ndarray = np.concatenate(([0], np.cumsum(self.counts)))
        self.span_prefix: np.ndarray = None if spans is None else np.concatenate(([0], np.cumsum(spans)))
        self.nonzero_prefix: np.ndarray = None if nonzero is None else np.concatenate(([0], np.cumsum(nonzero)))

    @classmethod
    def for_sparse_parts(cls, parts: list) -> "MultiFileIndex":
        """Index over sparse gap parts that split one gap array of length ℓ by index ranges.\n
        A part spans from the index after the last non-zero entry of the previous parts up to and including its own last
        non-zero entry. The last part spans to ℓ, and a part without entries spans nothing.
        """
        spans, previous_end = [], 0

        for number, part in enumerate(parts):
            if number == len(parts) - 1:
                end = part.length
            else:
                indices = [index for index, _ in part.iter_nonzero()]
                end = indices[-1] + 1 if indices else previous_end
            spans.append(end - previous_end)
            previous_end = end

        return cls([part.k for part in parts], spans, [part.k for part in parts])

    def __len__(self) -> int:
        return len(self.counts)

    @property
    def total(self) -> int:
        return int(self.prefix[-1])

    def locate(self, offset: int) -> tuple[int, int]:
        """Binary search for the part holding a global offset

        Args:
            offset (int): 0 <= offset < total

        Raises:
            IndexError: If offset is out of range

        Returns:
            tuple[int, int]: Part and offset inside it
        """
        if offset < 0 or offset >= self.total:
            raise IndexError(f"offset {offset} out of range for {self.total} elements")

        part = int(np.searchsorted(self.prefix, offset, side="right")) - 1
        return part, offset - int(self.prefix[part])

    def locate_gap_index(self, index: int) -> tuple[int, int]:
        """Part whose span holds a gap index, and the number of non-zero entries in the parts before it
        """
        if self.span_prefix is None:
            raise ValueError("index was built without gap spans")
        if index < 0 or index >= self.span_prefix[-1]:
            raise IndexError(f"gap index {index} out of range for length {int(self.span_prefix[-1])}")

        part = int(np.searchsorted(self.span_prefix, index, side="right")) - 1
        return part, int(self.nonzero_prefix[part])


def multifile_locate(index: MultiFileIndex, offset: int) -> tuple[int, int]:
    return index.locate(offset)


class MultiPartBwt:
    """A BWT stored as consecutive BwtFile parts, each a multiple of d long except the last
    """

    def __init__(self, parts: list) -> None:
        self.parts: list = parts
        self.index: MultiFileIndex = MultiFileIndex([len(part) for part in parts])

    def __len__(self) -> int:
        return self.index.total

    def __repr__(self) -> str:
        return f"MultiPartBwt(parts={len(self.parts)}, m={len(self)})"

    def read_range(self, start: int, stop: int) -> np.ndarray:
        start, stop = max(0, start), min(stop, len(self))

        if start >= stop:
            return np.zeros(0, dtype=np.uint8)

        pieces = []
        part, local = self.index.locate(start)

        while start < stop:
            piece = self.parts[part].read_range(local, local + stop - start)
            pieces.append(piece)
            start += len(piece)
            part, local = part + 1, 0

        return np.concatenate(pieces)

    def read_all(self) -> np.ndarray:
        return self.read_range(0, len(self))

    def open_at(self, start: int = 0):
        if start == len(self):
            return

        part, local = self.index.locate(start)
        yield from self.parts[part].open_at(local)

        for following in self.parts[part + 1:]:
            yield from following.open_at(0)

    def close(self) -> None:
        for part in self.parts:
            part.close()

    def discard(self) -> None:
        for part in self.parts:
            part.discard()

    def describe(self) -> dict:
        return {"kind": "bwt parts", "parts": [part.describe() for part in self.parts], "symbols": len(self)}
