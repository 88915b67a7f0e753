import heapq
from nano_bwt.succinct.BitStream import BitReader, BitWriter

DECODE_BITS = 12


class HuffmanCode:
    """Canonical prefix free code.\n
    Codewords are assigned left to right in order of (length, symbol), so the code is fully described by the
    codeword length of every used symbol. That's also how it is serialized.
    """

    def __init__(self, code_lengths: dict[int, int]) -> None:
        """Initializer for the HuffmanCode. Use build_huffman() to get an optimal code for a histogram

        Args:
            code_lengths (dict[int, int]): Codeword length per symbol

        Raises:
            ValueError: If no symbol is given, a length is < 1 or the lengths violate the Kraft inequality
        """
        if not code_lengths:
            raise ValueError("a code needs at least one symbol")
        if min(code_lengths.values()) < 1:
            raise ValueError("codeword lengths must be positive")

        self.code_lengths: dict[int, int] = dict(sorted(code_lengths.items()))

        if self.kraft_sum() > 1:
            raise ValueError(f"codeword lengths {self.code_lengths} don't form a prefix free code")

        self.codewords: dict[int, str] = {}
        self._first_code: dict[int, int] = {}
        self._first_index: dict[int, int] = {}
        self._count: dict[int, int] = {}
        self._ordered: list[int] = sorted(self.code_lengths, key=lambda symbol: (self.code_lengths[symbol], symbol))

        code = 0
        previous_length = self.code_lengths[self._ordered[0]]

        for index, symbol in enumerate(self._ordered):
            length = self.code_lengths[symbol]
            code <<= length - previous_length
            previous_length = length

            if length not in self._first_code:
                self._first_code[length] = code
                self._first_index[length] = index
                self._count[length] = 0

            self._count[length] += 1
            self.codewords[symbol] = format(code, f"0{length}b")
            code += 1

        self.max_length: int = previous_length
        self.table_bits: int = min(self.max_length, DECODE_BITS)
        self.decode_table: list[tuple[int, int]] = self._decode_table()

    def _decode_table(self) -> list[tuple[int, int]]:
        """(symbol, length) for every table_bits wide window starting with a codeword of at most table_bits bits.
        Other windows hold (0, 0)
        """
        table = [(0, 0)] * (1 << self.table_bits)

        for symbol in self._ordered:
            length = self.code_lengths[symbol]
            if length > self.table_bits:
                break

            shift = self.table_bits - length
            first = int(self.codewords[symbol], 2) << shift
            table[first:first + (1 << shift)] = [(symbol, length)] * (1 << shift)

        return table

    def __contains__(self, symbol: int) -> bool:
        return symbol in self.codewords

    def __len__(self) -> int:
        return len(self.codewords)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, HuffmanCode) and self.code_lengths == other.code_lengths

    def __repr__(self) -> str:
        return f"HuffmanCode({self.codewords})"

    def kraft_sum(self) -> float:
        return sum(2.0 ** -length for length in self.code_lengths.values())

    def encode_symbol(self, writer: BitWriter, symbol: int) -> None:
        codeword = self.codewords[symbol]
        writer.write_bits(int(codeword, 2), len(codeword))

    def decode_symbol(self, reader: BitReader) -> int:
        """Reads one codeword. Codewords of up to table_bits bits take a single lookup in the decode table, longer
        ones continue bit by bit through the canonical first-code table

        Args:
            reader (BitReader): Reader positioned on a codeword

        Raises:
            ValueError: If the bits don't form a codeword
            EOFError: If the stream ends inside a codeword

        Returns:
            int: Decoded symbol
        """
        window = reader.peek_bits(self.table_bits)
        symbol, length = self.decode_table[window]

        if length:
            reader.skip(length)
            return symbol

        reader.skip(self.table_bits)
        code = window

        for length in range(self.table_bits + 1, self.max_length + 1):
            code = (code << 1) | reader.read_bit()

            if length in self._first_code and 0 <= code - self._first_code[length] < self._count[length]:
                return self._ordered[self._first_index[length] + code - self._first_code[length]]

        raise ValueError("invalid codeword in Huffman coded stream")


def build_huffman(histogram: dict[int, int]) -> HuffmanCode:
    """Builds an optimal canonical code for the symbols with a positive count.\n
    Ties in the merging order are broken by the smallest symbol of each subtree, so equal histograms always give
    equal codes. A single used symbol gets a 1 bit codeword.

    Args:
        histogram (dict[int, int]): Count per symbol

    Raises:
        ValueError: If no symbol has a positive count

    Returns:
        HuffmanCode: The code
    """
    used = {int(symbol): int(count) for symbol, count in histogram.items() if count > 0}

    if not used:
        raise ValueError("can't build a code for an empty histogram")
    if len(used) == 1:
        return HuffmanCode({next(iter(used)): 1})

    heap = [(count, symbol, [symbol]) for symbol, count in used.items()]
    heapq.heapify(heap)
    lengths = dict.fromkeys(used, 0)

    while len(heap) > 1:
        count_a, key_a, symbols_a = heapq.heappop(heap)
        count_b, key_b, symbols_b = heapq.heappop(heap)

        for symbol in symbols_a + symbols_b:
            lengths[symbol] += 1

        heapq.heappush(heap, (count_a + count_b, min(key_a, key_b), symbols_a + symbols_b))

    return HuffmanCode(lengths)
