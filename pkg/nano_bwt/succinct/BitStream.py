DRAIN_BYTES = 1 << 16


class BitWriter:
    """Accumulates bits most-significant-bit first into a bytearray, optionally draining whole bytes into a file
    """

    def __init__(self, target=None) -> None:
        self.target = target
        self.bytes_flushed: int = 0
        self._buffer: bytearray = bytearray()
        self._current: int = 0
        self._filled: int = 0
        self.bit_length: int = 0

    def write_bit(self, bit: int) -> None:
        self.write_bits(1 if bit else 0, 1)

    def write_bits(self, value: int, width: int) -> None:
        """Writes the `width` lowest bits of value, most significant first
        """
        if width <= 0:
            return

        self._current = (self._current << width) | (value & ((1 << width) - 1))
        self._filled += width
        self.bit_length += width

        if self._filled >= 8:
            rest = self._filled & 7
            self._buffer += (self._current >> rest).to_bytes(self._filled >> 3, "big")
            self._current &= (1 << rest) - 1
            self._filled = rest

            if self.target is not None and len(self._buffer) >= DRAIN_BYTES:
                self._drain()

    def _drain(self) -> None:
        if self.target is not None and self._buffer:
            self.target.write(self._buffer)
            self.bytes_flushed += len(self._buffer)
            self._buffer = bytearray()

    def write_gamma(self, z: int) -> None:
        """Writes the Elias γ code of z, i.e. ⌊log z⌋ zero bits followed by the binary digits of z

        Args:
            z (int): Positive integer

        Raises:
            ValueError: If z < 1
        """
        if z < 1:
            raise ValueError(f"γ code can't represent {z}")

        # the leading zeros come for free from the width
        self.write_bits(z, 2 * z.bit_length() - 1)

    def finish(self) -> int:
        """Writes the remaining bits, padding the last byte with zeros, and returns the number of bytes written to the target
        """
        if self._filled:
            self._buffer.append(self._current << (8 - self._filled))
            self._current = 0
            self._filled = 0

        self._drain()
        return self.bytes_flushed

    def getvalue(self) -> bytes:
        """Bytes written so far, with the last partial byte padded by zero bits
        """
        if self._filled:
            return bytes(self._buffer) + bytes((self._current << (8 - self._filled),))

        return bytes(self._buffer)


class BitReader:
    """Reads bits most-significant-bit first from a bytes like object, starting at any bit position
    """

    def __init__(self, data, position: int = 0, limit: int = None) -> None:
        """Initializer for the BitReader

        Args:
            data: Packed bits (bytes, bytearray, memoryview or mmap)
            position (int, optional): First bit to read. Defaults to 0.
            limit (int, optional): Number of valid bits in data. Defaults to 8 * len(data).
        """
        self.data = data
        self.position: int = position
        self.limit: int = 8 * len(data) if limit is None else limit

    def read_bit(self) -> int:
        if self.position >= self.limit:
            raise EOFError("read past the end of the bit stream")

        position = self.position
        self.position += 1
        return (self.data[position >> 3] >> (7 - (position & 7))) & 1

    def read_bits(self, width: int) -> int:
        if width <= 0:
            return 0

        end = self.position + width

        if end > self.limit:
            raise EOFError("read past the end of the bit stream")

        first, last = self.position >> 3, (end - 1) >> 3
        chunk = int.from_bytes(self.data[first:last + 1], "big")
        self.position = end
        return (chunk >> ((last + 1) * 8 - end)) & ((1 << width) - 1)

    def peek_bits(self, width: int) -> int:
        """Next `width` bits without advancing. Bits past the limit read as zero
        """
        if width <= 0:
            return 0

        end = self.position + width
        first, last = self.position >> 3, (end - 1) >> 3
        raw = self.data[first:last + 1]
        chunk = int.from_bytes(raw, "big") << 8 * (last + 1 - first - len(raw))
        value = (chunk >> ((last + 1) * 8 - end)) & ((1 << width) - 1)
        missing = end - max(self.limit, self.position)

        if missing > 0:
            value = (value >> min(missing, width)) << min(missing, width)

        return value

    def skip(self, width: int) -> None:
        if self.position + width > self.limit:
            raise EOFError("read past the end of the bit stream")

        self.position += width

    def read_gamma(self) -> int:
        zeros = 0

        while self.read_bit() == 0:
            zeros += 1

        return (1 << zeros) | self.read_bits(zeros)

    def at_end(self) -> bool:
        return self.position >= self.limit
