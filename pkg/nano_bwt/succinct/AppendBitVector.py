from math import ceil, log2
import numpy as np


class AppendBitVector:
    """Bit vector that only grows at its end while keeping rank and select queries constant time.\n
    The bits are split into superblocks of β₀ = ⌈log² L⌉ bits holding absolute rank-0 counts and sub-blocks of
    β₁ = ⌈log L / 2⌉ bits holding counts relative to their superblock, where L is the capacity hint. Ranks inside the
    superblock that is still being filled are answered from an explicit tail cache, so appending never needs to look back.
    Every ζ₀-th one bit has its position sampled for select, and the one bits of the unfinished select block
    are cached explicitly.
    """

    def __init__(self, capacity: int = 64) -> None:
        """Initializer for the AppendBitVector

        Args:
            capacity (int, optional): Expected final number of bits. Index parameters are frozen from it; appending
            past it rebuilds the index with parameters for twice the length. Defaults to 64.
        """
        self._bits: bytearray = bytearray()
        self._configure(capacity)
        self._reset_index()

    def _configure(self, capacity: int) -> None:
        self.capacity: int = max(int(capacity), 4)
        log_l = log2(self.capacity)
        self.beta1: int = max(1, ceil(log_l / 2))
        # superblocks are a whole number of sub-blocks
        self.beta0: int = max(self.beta1, ceil(ceil(log_l ** 2) / self.beta1) * self.beta1)
        self.zeta0: int = max(1, ceil(log_l ** 2))

    def _reset_index(self) -> None:
        self._rank_super: list[int] = [0]
        self._rank_sub: list[int] = []
        self._tail_rank: list[int] = []
        self._ones: int = 0
        self._select_samples: list[int] = []
        self._select_tail: list[int] = []

    @classmethod
    def from_bits(cls, bits, capacity: int = None) -> "AppendBitVector":
        """Builds a bit vector in one go from a sequence of 0/1 values. The resulting index is the same as the one
        obtained by appending the bits one by one

        Args:
            bits: Iterable or array of 0/1 values
            capacity (int, optional): Capacity hint. Defaults to the number of bits.

        Returns:
            AppendBitVector: The bit vector
        """
        array = np.asarray(bits, dtype=np.uint8).ravel()
        vector = cls(len(array) if capacity is None else capacity)
        vector._load(array)
        return vector

    def _load(self, array: np.ndarray) -> None:
        if len(array) > self.capacity:
            self._configure(2 * len(array))

        self._bits = bytearray(array.tobytes())
        self._reset_index()
        length = len(array)

        if length == 0:
            return

        zeros_before = np.concatenate(([0], np.cumsum(1 - array.astype(np.int64))))
        complete = length // self.beta0
        self._rank_super = [int(zeros_before[s * self.beta0]) for s in range(complete + 1)]

        sub_per_super = self.beta0 // self.beta1
        sub_starts = np.arange(complete * sub_per_super) * self.beta1
        super_starts = (sub_starts // self.beta0) * self.beta0
        self._rank_sub = (zeros_before[sub_starts] - zeros_before[super_starts]).tolist()

        tail_start = complete * self.beta0
        self._tail_rank = (zeros_before[tail_start + 1:length + 1] - zeros_before[tail_start]).tolist()

        ones = np.flatnonzero(array)
        self._ones = int(ones.size)
        self._select_samples = ones[::self.zeta0].tolist()
        if self._ones % self.zeta0:
            self._select_tail = ones[(self._ones // self.zeta0) * self.zeta0:].tolist()

    def __len__(self) -> int:
        return len(self._bits)

    def __getitem__(self, i: int) -> int:
        return self._bits[i]

    @property
    def ones(self) -> int:
        return self._ones

    def to_numpy(self) -> np.ndarray:
        return np.frombuffer(bytes(self._bits), dtype=np.uint8).copy()

    def append(self, bit: int) -> None:
        """Appends a single bit, extending the indexes whenever a superblock or a select block gets completed

        Args:
            bit (int): 0 or 1
        """
        if len(self._bits) >= self.capacity:
            self._load(np.frombuffer(bytes(self._bits) + bytes((1 if bit else 0,)), dtype=np.uint8))
            return

        bit = 1 if bit else 0
        position = len(self._bits)
        self._bits.append(bit)
        previous = self._tail_rank[-1] if self._tail_rank else 0
        self._tail_rank.append(previous + 1 - bit)

        if bit:
            if self._ones % self.zeta0 == 0:
                self._select_samples.append(position)
                self._select_tail = []
            self._select_tail.append(position)
            self._ones += 1
            if self._ones % self.zeta0 == 0:
                self._select_tail = []

        if len(self._tail_rank) == self.beta0:
            self._close_superblock()

    def extend(self, bits) -> None:
        for bit in bits:
            self.append(bit)

    def _close_superblock(self) -> None:
        tail = self._tail_rank

        for offset in range(0, self.beta0, self.beta1):
            self._rank_sub.append(tail[offset - 1] if offset else 0)

        self._rank_super.append(self._rank_super[-1] + tail[-1])
        self._tail_rank = []

    def rank0(self, i: int) -> int:
        """Number of 0 bits in positions [0, i]

        Args:
            i (int): Position, 0 <= i < len

        Raises:
            IndexError: If i is out of range

        Returns:
            int: Rank
        """
        if i < 0 or i >= len(self._bits):
            raise IndexError(f"rank position {i} out of range for {len(self._bits)} bits")

        superblock = i // self.beta0

        if superblock == len(self._rank_super) - 1:
            return self._rank_super[superblock] + self._tail_rank[i - superblock * self.beta0]

        sub = i // self.beta1
        start = sub * self.beta1
        return self._rank_super[superblock] + self._rank_sub[sub] + self._bits.count(0, start, i + 1)

    def rank1(self, i: int) -> int:
        return i + 1 - self.rank0(i)

    def rank1_prefix(self, r: int) -> int:
        """Number of 1 bits among the first r bits, 0 <= r <= len
        """
        return 0 if r == 0 else self.rank1(r - 1)

    def rank0_prefix(self, r: int) -> int:
        return 0 if r == 0 else self.rank0(r - 1)

    def select1(self, k: int) -> int:
        """Position of the (k+1)-th 1 bit

        Args:
            k (int): 0 <= k < number of ones

        Raises:
            IndexError: If k is out of range

        Returns:
            int: Position
        """
        if k < 0 or k >= self._ones:
            raise IndexError(f"select argument {k} out of range for {self._ones} one bits")

        block = k // self.zeta0

        if self._select_tail and block == len(self._select_samples) - 1:
            return self._select_tail[k - block * self.zeta0]

        low = self._select_samples[block]

        if k % self.zeta0 == 0:
            return low

        high = self._select_samples[block + 1] if block + 1 < len(self._select_samples) else len(self._bits) - 1

        while low < high:
            middle = (low + high) // 2
            if self.rank1(middle) >= k + 1:
                high = middle
            else:
                low = middle + 1

        return low
