import numpy as np


class Text:
    """Text holds the input bytes and answers queries on its circular extension, i.e. the
    semi infinite string where position i reads data[i mod n].\n
    All suffix comparisons in nano_bwt are done on this circular string, so there is no terminator symbol.
    """

    def __init__(self, data: bytes | bytearray | np.ndarray | str) -> None:
        """Initializer for the Text class

        Args:
            data (bytes | bytearray | np.ndarray | str): Input symbols. Strings are encoded as latin-1 so that every
            character maps to exactly one byte

        Raises:
            ValueError: If the input is empty
        """
        if isinstance(data, str):
            data = data.encode("latin-1")

        if isinstance(data, np.ndarray):
            self.data: np.ndarray = np.asarray(data, dtype=np.uint8).copy()
        else:
            self.data: np.ndarray = np.frombuffer(bytes(data), dtype=np.uint8).copy()

        if self.data.size == 0:
            raise ValueError("input must be non-empty")

        self.data.setflags(write=False)
        self.n: int = int(self.data.size)
        self.sigma: int = int(self.data.max()) + 1
        self._doubled: np.ndarray = None

    @classmethod
    def from_file(cls, path: str) -> "Text":
        """Reads a raw byte file without interpreting line endings or encodings

        Args:
            path (str): Path to the input file

        Returns:
            Text: The loaded text
        """
        with open(path, "rb") as f:
            return cls(f.read())

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"Text(n={self.n}, sigma={self.sigma})"

    def circular_char(self, i: int) -> int:
        """Symbol at position i of the circular text

        Args:
            i (int): Any non-negative position

        Returns:
            int: data[i mod n]
        """
        return int(self.data[i % self.n])

    @property
    def doubled(self) -> np.ndarray:
        """Text concatenated with itself. Any n symbols of the circular text starting at a position in [0, n)
        are a contiguous slice of it.
        """
        if self._doubled is None:
            self._doubled = np.concatenate((self.data, self.data))
            self._doubled.setflags(write=False)

        return self._doubled

    def window(self, start: int, length: int) -> np.ndarray:
        """Copies `length` symbols of the circular text starting at `start`

        Args:
            start (int): First position, may exceed n
            length (int): Number of symbols, may exceed n

        Returns:
            np.ndarray: uint8 array of the requested symbols
        """
        if length <= 0:
            return np.zeros(0, dtype=np.uint8)

        start %= self.n

        if start + length <= 2 * self.n:
            return self.doubled[start:start + length].copy()

        return np.take(self.data, np.arange(start, start + length) % self.n)

    def histogram(self, start: int = 0, length: int = None) -> np.ndarray:
        """Symbol counts of a circular range

        Args:
            start (int, optional): First position. Defaults to 0.
            length (int, optional): Range length. Defaults to the whole text.

        Returns:
            np.ndarray: Array of 256 counts
        """
        length = self.n if length is None else length
        return np.bincount(self.window(start, length), minlength=256).astype(np.int64)

    def compare_suffixes(self, a: int, b: int, offset: int = 0) -> tuple[int, int]:
        """Compares the circular suffixes starting at a and b, skipping the first `offset` symbols
        that are already known to match

        Args:
            a (int): Start of the first suffix
            b (int): Start of the second suffix
            offset (int, optional): Number of leading symbols known to be equal. Defaults to 0.

        Returns:
            tuple[int, int]: Longest common prefix (capped at n) and the comparison sign (-1, 0 or 1).
            Suffixes that agree on n symbols are equal forever and get ordered by their start index
        """
        n = self.n
        a %= n
        b %= n

        if a == b:
            return n, 0

        doubled = self.doubled
        lcp = offset
        chunk = 64

        while lcp < n:
            length = min(chunk, n - lcp)
            left = doubled[a + lcp:a + lcp + length]
            right = doubled[b + lcp:b + lcp + length]
            mismatch = np.flatnonzero(left != right)

            if mismatch.size:
                lcp += int(mismatch[0])
                return lcp, -1 if doubled[a + lcp] < doubled[b + lcp] else 1

            lcp += length
            chunk *= 2

        return n, -1 if a < b else 1
