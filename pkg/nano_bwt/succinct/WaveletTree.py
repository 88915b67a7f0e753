import numpy as np
from nano_bwt.succinct.AppendBitVector import AppendBitVector
from nano_bwt.succinct.HuffmanCode import HuffmanCode


class WaveletTree:
    """Wavelet tree shaped by a prefix free code.\n
    Every inner node is keyed by its code path (the root is ""), and stores for each symbol that passes through it the
    next bit of that symbol's codeword. Rank of a symbol is answered by walking its codeword and re-ranking in each node,
    which is the only primitive backward search needs.
    """

    def __init__(self, node_bits: dict[str, AppendBitVector], code: HuffmanCode, length: int, symbol_counts: np.ndarray) -> None:
        """Initializer for the WaveletTree. Use build_wavelet() or parallel_wavelet() to construct one

        Args:
            node_bits (dict[str, AppendBitVector]): Bit vector per inner node code path
            code (HuffmanCode): Code defining the tree shape
            length (int): Sequence length
            symbol_counts (np.ndarray): C[a] = number of symbols smaller than a, for a in [0, 256]
        """
        self.node_bits: dict[str, AppendBitVector] = node_bits
        self.code: HuffmanCode = code
        self.length: int = length
        self.symbol_counts: np.ndarray = symbol_counts

    def __len__(self) -> int:
        return self.length

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WaveletTree) or self.code != other.code or self.length != other.length:
            return False

        if self.node_bits.keys() != other.node_bits.keys():
            return False

        return all(np.array_equal(self.node_bits[key].to_numpy(), other.node_bits[key].to_numpy()) for key in self.node_bits)

    def nbytes(self) -> int:
        """Tracked size of the index: one byte per stored bit plus the rank and select tables
        """
        total = 0

        for vector in self.node_bits.values():
            total += len(vector) + 8 * (len(vector) // vector.beta1 + len(vector) // vector.zeta0 + 2)

        return total + self.symbol_counts.nbytes

    def rank_prefix(self, a: int, r: int) -> int:
        """Count of symbol a among the first r positions

        Args:
            a (int): Symbol
            r (int): Prefix length, 0 <= r <= length

        Returns:
            int: Count
        """
        if a not in self.code:
            return 0
        if len(self.code) == 1:
            return r

        codeword = self.code.codewords[a]
        node = ""

        for bit in codeword:
            if r == 0:
                return 0

            vector = self.node_bits[node]
            r = vector.rank1_prefix(r) if bit == "1" else vector.rank0_prefix(r)
            node += bit

        return r

    def rank(self, a: int, i: int) -> int:
        """Count of symbol a in positions [0, i]

        Args:
            a (int): Symbol
            i (int): Position, 0 <= i < length

        Raises:
            IndexError: If i is out of range

        Returns:
            int: Count
        """
        if i < 0 or i >= self.length:
            raise IndexError(f"rank position {i} out of range for length {self.length}")

        return self.rank_prefix(a, i + 1)


def code_bit_tables(code: HuffmanCode) -> tuple[dict[str, tuple[np.ndarray, np.ndarray]], int]:
    """Per inner node, lookup tables giving for every symbol whether it passes the node and which bit it takes there

    Args:
        code (HuffmanCode): Tree shape

    Returns:
        tuple[dict[str, tuple[np.ndarray, np.ndarray]], int]: Map from node path to (passes, bit) tables over 256 symbols
        and the maximal codeword length
    """
    tables = {}

    for symbol, codeword in code.codewords.items():
        for depth in range(len(codeword)):
            node = codeword[:depth]
            if node not in tables:
                tables[node] = (np.zeros(256, dtype=bool), np.zeros(256, dtype=np.uint8))
            passes, bits = tables[node]
            passes[symbol] = True
            bits[symbol] = 1 if codeword[depth] == "1" else 0

    return tables, code.max_length


def node_bit_arrays(seq: np.ndarray, code: HuffmanCode) -> dict[str, np.ndarray]:
    """Bits each inner node stores for a sequence, computed level by level with numpy

    Args:
        seq (np.ndarray): uint8 symbols
        code (HuffmanCode): Tree shape

    Returns:
        dict[str, np.ndarray]: 0/1 arrays per inner node path
    """
    if len(code) == 1:
        return {}

    tables, _ = code_bit_tables(code)
    arrays = {}
    pending = [("", seq)]

    while pending:
        node, symbols = pending.pop()
        if node not in tables:
            continue

        bits = tables[node][1][symbols]
        arrays[node] = bits
        pending.append((node + "0", symbols[bits == 0]))
        pending.append((node + "1", symbols[bits == 1]))

    return arrays


def symbol_counts_of(seq: np.ndarray) -> np.ndarray:
    histogram = np.bincount(seq, minlength=256).astype(np.int64)
    return np.concatenate(([0], np.cumsum(histogram)))


def build_wavelet(seq, code: HuffmanCode) -> WaveletTree:
    """Builds the wavelet tree of a sequence: the root stores the first code bit of every symbol, and the children
    store the remaining bits of the symbols sent to them, in sequence order

    Args:
        seq: Symbol sequence (bytes or uint8 array)
        code (HuffmanCode): Code with a codeword for every symbol of seq

    Raises:
        ValueError: If a symbol has no codeword

    Returns:
        WaveletTree: The tree
    """
    seq = np.asarray(bytearray(seq) if isinstance(seq, (bytes, bytearray)) else seq, dtype=np.uint8)
    missing = set(np.unique(seq).tolist()) - set(code.codewords)

    if missing:
        raise ValueError(f"symbols {sorted(missing)} have no codeword")

    node_bits = {node: AppendBitVector.from_bits(bits) for node, bits in node_bit_arrays(seq, code).items()}
    return WaveletTree(node_bits, code, len(seq), symbol_counts_of(seq))
