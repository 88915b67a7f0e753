import numpy as np
from nano_bwt.succinct import AppendBitVector


class SuccinctBorderArray:
    """Border array B of a string, stored as the bit vector 1 0^(B[0]-B[1]+1) 1 0^(B[1]-B[2]+1) 1 ...\n
    The zero run in front of the i-th one bit has length B[i-1] - B[i] + 1, so B[i] = i - rank0(select1(i)).
    Since B[i] <= B[i-1] + 1 every run is non-negative and the runs telescope to at most |w| zeros in total.
    """

    def __init__(self, length: int) -> None:
        """Initializer for the SuccinctBorderArray. Use border_array() to build one for a string

        Args:
            length (int): Length of the string the array will describe
        """
        self.length: int = 0
        self.bitvec: AppendBitVector = AppendBitVector(2 * length + 1)
        self._last: int = 0

    def __len__(self) -> int:
        return self.length

    def push(self, border: int) -> None:
        """Appends the border length of the next prefix
        """
        if self.length:
            for _ in range(self._last - border + 1):
                self.bitvec.append(0)

        self.bitvec.append(1)
        self._last = border
        self.length += 1

    def get(self, i: int) -> int:
        """Length of the longest border of w[0..i]

        Args:
            i (int): Prefix end, 0 <= i < |w|

        Raises:
            IndexError: If i is out of range

        Returns:
            int: Border length
        """
        if i < 0 or i >= self.length:
            raise IndexError(f"border index {i} out of range for length {self.length}")

        return i - self.bitvec.rank0(self.bitvec.select1(i))

    def values(self) -> np.ndarray:
        return np.array([self.get(i) for i in range(self.length)], dtype=np.int64)


def border_array(w) -> SuccinctBorderArray:
    """Computes the border array left to right with the classical failure function scan, reading earlier entries
    back from the succinct representation

    Args:
        w: Symbol sequence

    Raises:
        ValueError: If w is empty

    Returns:
        SuccinctBorderArray: Border array of w
    """
    symbols = w.encode("latin-1") if isinstance(w, str) else w
    m = len(symbols)

    if m == 0:
        raise ValueError("border array of an empty string is undefined")

    borders = SuccinctBorderArray(m)
    borders.push(0)
    previous = 0

    for i in range(1, m):
        k = previous
        while k > 0 and symbols[i] != symbols[k]:
            k = borders.get(k - 1)
        if symbols[i] == symbols[k]:
            k += 1
        borders.push(k)
        previous = k

    return borders


def minimal_period_of_prefix(borders: SuccinctBorderArray, i: int) -> int:
    """Minimal period of w[0..i], which is i + 1 - B[i]
    """
    return i + 1 - borders.get(i)


def minimal_short_period(w) -> int | None:
    """Minimal period of w if it is at most ⌊|w| / 2⌋. Such a period divides every other period of w that
    is at most ⌊|w| / 2⌋

    Args:
        w: Non-empty symbol sequence

    Returns:
        int | None: The period, or None if the minimal period is longer
    """
    borders = border_array(w)
    period = minimal_period_of_prefix(borders, len(borders) - 1)
    return period if period <= len(borders) // 2 else None
