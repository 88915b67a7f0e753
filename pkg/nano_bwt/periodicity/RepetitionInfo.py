import logging
import os
from math import ceil, gcd, log2
import numpy as np
from nano_bwt.textmodel import Text, BlockPlan
from nano_bwt.periodicity.BorderArray import border_array

logger = logging.getLogger(__name__)


class RepetitionInfo:
    """Per block repetition analysis.\n
    A block starting at i propagates period p (1 <= p <= b) if the b + 2p symbols of the circular text starting at i
    have period p; only the minimal such p is kept. A block generates the period of its successor if its last p symbols
    equal the first p symbols of the successor. next_break points, for every propagating block, to the closest following
    block that doesn't propagate the same period. It uses ν as the sentinel for "none".
    """

    def __init__(self, propagated: list[int | None], generates: list[bool], next_break: np.ndarray,
                 power_root: int | None = None, power_exponent: int | None = None) -> None:
        """Initializer for RepetitionInfo. Use compute_repetition_info() to get one for a text

        Args:
            propagated (list[int | None]): Minimal propagated period per block
            generates (list[bool]): Generation flag per block
            next_break (np.ndarray): Next non propagating block per block, ν when undefined. spill() swaps it for a
                SpilledNextBreak
            power_root (int | None, optional): Length of α when the text is α^k with |α| <= b. Defaults to None.
            power_exponent (int | None, optional): k when the text is a power. Defaults to None.
        """
        self.propagated: list[int | None] = propagated
        self.generates: list[bool] = generates
        self.next_break: np.ndarray = next_break
        self.power_root: int | None = power_root
        self.power_exponent: int | None = power_exponent

    @property
    def is_power(self) -> bool:
        return self.power_root is not None

    @property
    def nu(self) -> int:
        return len(self.propagated)

    def __repr__(self) -> str:
        return f"RepetitionInfo(propagated={self.propagated}, generates={self.generates}, power={self.power_root, self.power_exponent})"

    def spill(self, path: str) -> None:
        """Moves next_break to a file of fixed width little endian integers and maps it back read-only
        """
        width = spill_width(self.nu)
        np.asarray(self.next_break, dtype="<u8").view(np.uint8).reshape(self.nu, 8)[:, :width].tofile(path)
        self.next_break = self.load_next_break(path, self.nu)
        logger.debug("spilled next_break of %d blocks to %s", self.nu, path)

    @staticmethod
    def load_next_break(path: str, nu: int) -> "SpilledNextBreak":
        return SpilledNextBreak(path, nu)


class SpilledNextBreak:
    """Read-only next_break table mapped from its spill file, entries of ⌈log₂(ν+1) / 8⌉ bytes each
    """

    def __init__(self, path: str, nu: int) -> None:
        """Initializer for SpilledNextBreak

        Raises:
            ValueError: If the file size doesn't match ν entries
        """
        self.path: str = path
        self.width: int = spill_width(nu)
        size = os.path.getsize(path)

        if size != self.width * nu:
            raise ValueError(f"expected {self.width * nu} bytes of next_break entries, found {size}")

        self._map: np.memmap = np.memmap(path, dtype=np.uint8, mode="r", shape=(nu, self.width))

    def __len__(self) -> int:
        return len(self._map)

    def __getitem__(self, block: int) -> int:
        return int.from_bytes(self._map[block].tobytes(), "little")

    def tolist(self) -> list[int]:
        shifts = 8 * np.arange(self.width, dtype=np.int64)
        return (self._map.astype(np.int64) << shifts).sum(axis=1).tolist()


def spill_width(nu: int) -> int:
    return max(1, ceil(log2(nu + 1) / 8))


def propagated_period(text: Text, start: int, b: int) -> int | None:
    """Smallest p in [1, b] such that the b + 2p symbols starting at `start` have period p.\n
    The border array of the 3b symbol window gives the minimal period of every prefix; if the prefix of length b + 2p
    has minimal period exactly p then p is propagated, and the first p with this property is the minimal one.

    Args:
        text (Text): Text
        start (int): Block start
        b (int): Block size of the plan

    Returns:
        int | None: The period or None
    """
    window = text.window(start, 3 * b)
    borders = border_array(window)

    for p in range(1, b + 1):
        end = b + 2 * p - 1
        if end + 1 - borders.get(end) == p:
            return p

    return None


def compute_repetition_info(text: Text, plan: BlockPlan) -> RepetitionInfo:
    """Computes the propagation and generation predicates of every block, the next_break table, and whether the text
    is a power α^k with |α| <= b

    Args:
        text (Text): Text
        plan (BlockPlan): Block plan of the text

    Returns:
        RepetitionInfo: Analysis result
    """
    nu, b = plan.nu, plan.b
    propagated = [propagated_period(text, start, b) for start, _ in plan]
    generates = []

    for block in range(nu):
        period = propagated[plan.successor(block)]
        end = plan.start(block) + plan.length(block)

        if period is None or period > plan.length(block):
            generates.append(False)
            continue

        generates.append(bool(np.array_equal(text.window(end - period, period), text.window(end, period))))

    next_break = np.full(nu, nu, dtype=np.int64)

    for _ in range(2):
        for block in reversed(range(nu)):
            if propagated[block] is None:
                continue
            successor = plan.successor(block)
            if propagated[successor] != propagated[block]:
                next_break[block] = successor
            elif next_break[successor] != nu:
                next_break[block] = next_break[successor]

    power_root, power_exponent = None, None
    period = propagated[0]

    if period is not None and period <= b and all(p == period for p in propagated):
        root = gcd(period, text.n)
        if np.array_equal(text.data, np.roll(text.data, -root)) and text.n // root > 1:
            power_root, power_exponent = root, text.n // root

    info = RepetitionInfo(propagated, generates, next_break, power_root, power_exponent)
    logger.debug("repetition info for %d blocks: %d propagating, %d generating, power=%s",
                 nu, sum(p is not None for p in propagated), sum(generates), info.is_power)
    return info
