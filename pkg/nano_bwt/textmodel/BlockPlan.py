from math import ceil


class BlockPlan:
    """Partition of [0, n) into ν contiguous blocks.\n
    The first μ blocks have length b and the rest b - 1, where b is deduced from the requested size b' as
    b = ⌈n / ⌈n / b'⌉⌉. Plans with arbitrary boundaries can be made with BlockPlan.from_boundaries,
    which is used for the finer partitions of parallel block sorting.
    """

    def __init__(self, n: int, b_target: int, b: int, boundaries: list[tuple[int, int]]) -> None:
        """Initializer for the BlockPlan class. Use plan_blocks() or BlockPlan.from_boundaries() instead of calling it directly

        Args:
            n (int): Text length
            b_target (int): Requested block size b'
            b (int): Largest block length
            boundaries (list[tuple[int, int]]): Half open intervals covering [0, n)
        """
        self.n: int = n
        self.b_target: int = b_target
        self.b: int = b
        self.boundaries: list[tuple[int, int]] = boundaries
        self.nu: int = len(boundaries)
        self.mu: int = sum(1 for start, end in boundaries if end - start == b)

    @classmethod
    def from_boundaries(cls, n: int, boundaries: list[tuple[int, int]]) -> "BlockPlan":
        """Builds a plan from explicit block intervals

        Args:
            n (int): Text length
            boundaries (list[tuple[int, int]]): Contiguous half open intervals covering [0, n)

        Raises:
            ValueError: If the intervals don't tile [0, n) or a block is empty

        Returns:
            BlockPlan: The plan
        """
        position = 0

        for start, end in boundaries:
            if start != position or end <= start:
                raise ValueError(f"blocks must be non-empty and contiguous, got {boundaries}")
            position = end

        if position != n:
            raise ValueError(f"blocks cover [0, {position}) instead of [0, {n})")

        b = max(end - start for start, end in boundaries)
        return cls(n, b, b, list(boundaries))

    def __len__(self) -> int:
        return self.nu

    def __iter__(self):
        return iter(self.boundaries)

    def __getitem__(self, index: int) -> tuple[int, int]:
        return self.boundaries[index]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, BlockPlan) and self.n == other.n and self.boundaries == other.boundaries

    def __repr__(self) -> str:
        return f"BlockPlan(n={self.n}, b={self.b}, nu={self.nu}, mu={self.mu})"

    def start(self, block: int) -> int:
        return self.boundaries[block % self.nu][0]

    def length(self, block: int) -> int:
        start, end = self.boundaries[block % self.nu]
        return end - start

    def successor(self, block: int) -> int:
        """Blocks are cyclic, the successor of the last block is block 0
        """
        return (block + 1) % self.nu


def plan_blocks(n: int, b_target: int) -> BlockPlan:
    """Partitions a text of length n into blocks of size b and b - 1

    Args:
        n (int): Text length
        b_target (int): Requested block size b', 0 < b' <= n

    Raises:
        ValueError: If b' is out of range

    Returns:
        BlockPlan: Plan with ν = ⌈n / b'⌉ blocks
    """
    if n <= 0:
        raise ValueError(f"n must be positive, got {n}")
    if b_target <= 0 or b_target > n:
        raise ValueError(f"block size must be in [1, {n}], got {b_target}")

    # blocks of length 1 leave nothing to extend
    effective = max(b_target, 2) if n >= 2 else b_target

    nu = ceil(n / effective)
    b = ceil(n / nu)
    mu = nu - (nu * b - n)

    boundaries = []
    position = 0

    for block in range(nu):
        length = b if block < mu else b - 1
        boundaries.append((position, position + length))
        position += length

    return BlockPlan(n, b_target, b, boundaries)
