from math import log2
import numpy as np
from nano_bwt.succinct import GammaStream, gamma_length


def dense_bound(length: int, total: int) -> int:
    """Upper bound on the γ coded size of a dense gap array: 3ℓ bits while s <= ℓ, else 5s bits
    """
    return 3 * length if total <= length else 5 * total


def sparse_bound(length: int, total: int, k: int) -> float:
    """Upper bound on the γ coded size of a sparse gap array with k non-zero entries
    """
    if k == 0:
        return 0.0

    return 2 * k * (1 + log2(max(total * length / (k * k), 1))) + 64 * k


class GapArray:
    """Dense gap array G[0..ℓ-1]. G[i] counts the right side suffixes that fall between the (i-1)-th and i-th left
    suffix. Encoded as γ(G[i] + 1) since γ can't represent zero.
    """

    is_dense = True

    def __init__(self, values) -> None:
        """Initializer for the GapArray

        Args:
            values: Non-negative counts
        """
        self.values: np.ndarray = np.asarray(values, dtype=np.int64)
        self.length: int = len(self.values)
        self.total: int = int(self.values.sum())

    def __len__(self) -> int:
        return self.length

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GapArray) and np.array_equal(self.values, other.values)

    def __repr__(self) -> str:
        return f"GapArray({self.values.tolist()})"

    @property
    def k(self) -> int:
        return int(np.count_nonzero(self.values))

    def iter_nonzero(self):
        for index in np.flatnonzero(self.values).tolist():
            yield index, int(self.values[index])

    def iter_values(self, start: int = 0):
        yield from self.values[start:].tolist()

    def to_dense(self) -> "GapArray":
        return self

    def encode(self) -> GammaStream:
        return GammaStream.encode((self.values + 1).tolist())

    def encoded_bits(self) -> int:
        return sum(gamma_length(value + 1) for value in self.values.tolist())

    def bound(self) -> int:
        return dense_bound(self.length, self.total)

    def nbytes(self) -> int:
        return int(self.values.nbytes)


class SparseGapArray:
    """Gap array that only keeps its k non-zero entries. Encoded as interleaved γ pairs: the first index plus one, or
    the distance to the previous non-zero index, followed by the value.
    """

    is_dense = False

    def __init__(self, length: int, indices, values) -> None:
        """Initializer for the SparseGapArray

        Args:
            length (int): ℓ
            indices: Strictly increasing indices < ℓ
            values: Positive values

        Raises:
            ValueError: If indices or values are malformed
        """
        self.length: int = length
        self.indices: np.ndarray = np.asarray(indices, dtype=np.int64)
        self.values: np.ndarray = np.asarray(values, dtype=np.int64)

        if len(self.indices) != len(self.values):
            raise ValueError("indices and values must have the same length")
        if len(self.indices) and (self.indices[0] < 0 or self.indices[-1] >= length or np.any(np.diff(self.indices) <= 0)):
            raise ValueError("sparse indices must be strictly increasing and inside [0, length)")
        if np.any(self.values < 1):
            raise ValueError("sparse gap values must be positive")

        self.total: int = int(self.values.sum())

    @classmethod
    def from_stream(cls, length: int, stream: GammaStream) -> "SparseGapArray":
        decoded = stream.decode()
        deltas, values = decoded[0::2], decoded[1::2]
        indices = np.cumsum(deltas, dtype=np.int64) - 1
        return cls(length, indices, values)

    def __len__(self) -> int:
        return self.length

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SparseGapArray) and self.length == other.length \
            and np.array_equal(self.indices, other.indices) and np.array_equal(self.values, other.values)

    def __repr__(self) -> str:
        return f"SparseGapArray(length={self.length}, pairs={list(self.iter_nonzero())})"

    @property
    def k(self) -> int:
        return len(self.indices)

    def iter_nonzero(self):
        yield from zip(self.indices.tolist(), self.values.tolist())

    def iter_values(self, start: int = 0):
        yield from self.to_dense().values[start:].tolist()

    def to_dense(self) -> GapArray:
        values = np.zeros(self.length, dtype=np.int64)
        values[self.indices] = self.values
        return GapArray(values)

    def _pairs(self) -> list[int]:
        deltas = np.diff(self.indices, prepend=-1)
        pairs = np.empty(2 * self.k, dtype=np.int64)
        pairs[0::2] = deltas
        pairs[1::2] = self.values
        return pairs.tolist()

    def encode(self) -> GammaStream:
        return GammaStream.encode(self._pairs())

    def encoded_bits(self) -> int:
        return sum(gamma_length(value) for value in self._pairs())

    def bound(self) -> float:
        return sparse_bound(self.length, self.total, self.k)

    def nbytes(self) -> int:
        return int(self.indices.nbytes + self.values.nbytes)


class DenseGapBuilder:
    """Sink building an in-memory dense array from increasing (index, value) pairs
    """

    def __init__(self, length: int) -> None:
        self.values: np.ndarray = np.zeros(length, dtype=np.int64)

    def add(self, index: int, value: int) -> None:
        self.values[index] = value

    def close(self) -> GapArray:
        return GapArray(self.values)


class SparseGapBuilder:
    """Sink building an in-memory sparse array from increasing (index, value) pairs
    """

    def __init__(self, length: int) -> None:
        self.length: int = length
        self.indices: list[int] = []
        self.values: list[int] = []

    def add(self, index: int, value: int) -> None:
        self.indices.append(index)
        self.values.append(value)

    def close(self) -> SparseGapArray:
        return SparseGapArray(self.length, self.indices, self.values)


def memory_sink(dense: bool, length: int):
    """Default sink factory: keeps gap arrays in memory
    """
    return DenseGapBuilder(length) if dense else SparseGapBuilder(length)


def gap_statistics(gap) -> dict:
    """ℓ, s and k of a dense gap array, with its dense and sparse γ sizes and their ratios to the coding bounds
    """
    pairs = list(gap.iter_nonzero())
    sparse = SparseGapArray(gap.length, [index for index, _ in pairs], [value for _, value in pairs])
    dense_bits = getattr(gap, "payload_bits", None)
    dense_bits = gap.encoded_bits() if dense_bits is None else dense_bits
    sparse_bits = sparse.encoded_bits()
    bounds = dense_bound(gap.length, gap.total), sparse.bound()

    return {
        "length": gap.length,
        "total": gap.total,
        "k": sparse.k,
        "dense_bits": dense_bits,
        "dense_ratio": dense_bits / bounds[0] if bounds[0] else 0.0,
        "sparse_bits": sparse_bits,
        "sparse_ratio": sparse_bits / bounds[1] if bounds[1] else 0.0,
    }
