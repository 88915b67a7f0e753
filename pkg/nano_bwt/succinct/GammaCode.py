from nano_bwt.succinct.BitStream import BitWriter, BitReader


def gamma_encode(z: int) -> str:
    """Elias γ code of z as a string of '0' and '1' characters

    Args:
        z (int): Positive integer

    Raises:
        ValueError: If z < 1

    Returns:
        str: Codeword of length 1 + 2⌊log z⌋
    """
    if z < 1:
        raise ValueError(f"γ code can't represent {z}")

    digits = bin(z)[2:]
    return "0" * (len(digits) - 1) + digits


def gamma_decode(bits: str, pos: int = 0) -> tuple[int, int]:
    """Decodes one γ codeword from a string of '0'/'1' characters

    Args:
        bits (str): Bit string
        pos (int, optional): Start of the codeword. Defaults to 0.

    Raises:
        ValueError: If the codeword is truncated

    Returns:
        tuple[int, int]: Decoded value and the position right after the codeword
    """
    zeros = 0

    while pos + zeros < len(bits) and bits[pos + zeros] == "0":
        zeros += 1

    end = pos + 2 * zeros + 1

    if end > len(bits):
        raise ValueError(f"truncated γ codeword at position {pos}")

    return int(bits[pos + zeros:end], 2), end


def gamma_length(z: int) -> int:
    return 2 * z.bit_length() - 1


class GammaStream:
    """Concatenation of γ codewords packed into bytes
    """

    def __init__(self, data: bytes, bit_length: int, count: int) -> None:
        """Initializer for the GammaStream. Use GammaStream.encode() to build one

        Args:
            data (bytes): Packed codewords
            bit_length (int): Number of meaningful bits
            count (int): Number of codewords
        """
        self.data: bytes = data
        self.bit_length: int = bit_length
        self.count: int = count

    @classmethod
    def encode(cls, values) -> "GammaStream":
        writer = BitWriter()
        count = 0

        for value in values:
            writer.write_gamma(int(value))
            count += 1

        return cls(writer.getvalue(), writer.bit_length, count)

    def __len__(self) -> int:
        return self.count

    def __iter__(self):
        reader = BitReader(self.data, limit=self.bit_length)

        for _ in range(self.count):
            yield reader.read_gamma()

    def decode(self) -> list[int]:
        return list(self)
