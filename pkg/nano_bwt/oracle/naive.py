"""Brute force references computed straight from the definitions. Nothing here uses the construction pipeline."""
from functools import cmp_to_key
import numpy as np


def _symbols(text) -> bytes:
    if isinstance(text, str):
        return text.encode("latin-1")
    if isinstance(text, np.ndarray):
        return np.asarray(text, dtype=np.uint8).tobytes()
    return bytes(text)


def _compare(doubled: bytes, n: int, i: int, j: int) -> int:
    # circular suffixes equal on n symbols are equal forever, then the smaller index wins
    a, b = doubled[i:i + n], doubled[j:j + n]
    if a != b:
        return -1 if a < b else 1
    return (i > j) - (i < j)


def _key(symbols: bytes, i: int) -> tuple[bytes, int]:
    return symbols[i:] + symbols[:i], i


def naive_circular_sa(text) -> list[int]:
    """Positions sorted by their circular suffixes, ties by position
    """
    symbols = _symbols(text)

    if not symbols:
        raise ValueError("input must be non-empty")

    doubled, n = symbols + symbols, len(symbols)
    return sorted(range(n), key=cmp_to_key(lambda i, j: _compare(doubled, n, i, j)))


def naive_bwt(text) -> bytes:
    """b[i] = t[SA[i] - 1] on the circular text
    """
    symbols = _symbols(text)
    return bytes(symbols[i - 1] for i in naive_circular_sa(symbols))


def naive_gap(text, split: int, start: int = 0, end: int = None) -> np.ndarray:
    """Gap array of the left suffixes [start, split) and the right suffixes [split, end): G[i] counts the right suffixes
    with exactly i smaller left suffixes
    """
    symbols = _symbols(text)
    end = len(symbols) if end is None else end
    left = sorted(_key(symbols, i) for i in range(start, split))
    gap = np.zeros(len(left) + 1, dtype=np.int64)

    for j in range(split, end):
        key = _key(symbols, j)
        gap[sum(1 for other in left if other < key)] += 1

    return gap


def naive_borders(w) -> list[int]:
    """B[i] = length of the longest proper border of w[0..i]
    """
    symbols = _symbols(w)
    return [max(k for k in range(i + 1) if symbols[:k] == symbols[i + 1 - k:i + 1]) for i in range(len(symbols))]


def naive_block_lcp(text, block: tuple[int, int]) -> list[int]:
    """LCP of neighbouring circular suffixes of the block [start, end) in sorted order, capped at n. lcp[0] = 0
    """
    symbols = _symbols(text)
    start, end = block
    n = len(symbols)
    order = sorted(range(start, end), key=lambda i: _key(symbols, i))
    lcp = [0]

    for a, b in zip(order, order[1:]):
        length = 0
        while length < n and symbols[(a + length) % n] == symbols[(b + length) % n]:
            length += 1
        lcp.append(length)

    return lcp


def naive_has_period(symbols: bytes, p: int) -> bool:
    return all(symbols[i] == symbols[i + p] for i in range(len(symbols) - p))


def naive_propagated(text, start: int, b: int) -> int | None:
    """Smallest p in [1, b] such that the b + 2p circular symbols from `start` have period p
    """
    symbols = _symbols(text)
    n = len(symbols)

    for p in range(1, b + 1):
        window = bytes(symbols[(start + k) % n] for k in range(b + 2 * p))
        if naive_has_period(window, p):
            return p

    return None


def inverse_bwt(bwt, first_rank: int = 0) -> bytes:
    """Text whose circular BWT is `bwt`, reading backwards from the row of the suffix at position 0. Any row gives a
    rotation of the text, the right first_rank gives the text itself
    """
    last = _symbols(bwt)
    n = len(last)
    smaller = {symbol: sum(1 for other in last if other < symbol) for symbol in set(last)}
    seen, lf = {}, []

    for symbol in last:
        lf.append(smaller[symbol] + seen.get(symbol, 0))
        seen[symbol] = seen.get(symbol, 0) + 1

    result, row = bytearray(n), first_rank

    for position in range(n - 1, -1, -1):
        result[position] = last[row]
        row = lf[row]

    return bytes(result)


class OracleResult:
    """Everything the oracles know about one text
    """

    def __init__(self, text, splits: list[int] = ()) -> None:
        symbols = _symbols(text)
        self.sa: list[int] = naive_circular_sa(symbols)
        self.bwt: bytes = bytes(symbols[i - 1] for i in self.sa)
        self.borders: list[int] = naive_borders(symbols)
        self.gaps: dict[int, np.ndarray] = {split: naive_gap(symbols, split) for split in splits}
        self.isa: list[int] = [0] * len(symbols)

        for rank, position in enumerate(self.sa):
            self.isa[position] = rank
