import logging
import re
from math import ceil, log2
from nano_bwt.errors import BudgetError
from nano_bwt.blocksort import MAX_WORKING_FACTOR
from nano_bwt.extio import DEFAULT_BWT_BLOCK, DEFAULT_GAP_RESTART, default_temp_dir

logger = logging.getLogger(__name__)

MODES = ("auto", "balanced", "skewed")
SIZE_UNITS = {"": 1, "K": 1 << 10, "M": 1 << 20, "G": 1 << 30}
MINIMAL_DEFAULT_BUDGET = 64 << 10
DEFAULT_SPILL_BLOCKS = 1 << 20
# suffix array and lcp entries plus the working string symbol, per symbol of working string
SORT_BYTES_PER_SYMBOL = 17


def parse_size(value) -> int:
    """Parses sizes like 4096, "512K", "1.5M" or "2G" (powers of 1024) into bytes

    Raises:
        ValueError: If the value isn't a positive size
    """
    if isinstance(value, int):
        size = value
    else:
        match = re.fullmatch(r"\s*(\d+(?:\.\d+)?)\s*([KMG]?)i?B?\s*", str(value), re.IGNORECASE)
        if match is None:
            raise ValueError(f"can't parse size {value!r}, expected a number with an optional K, M or G suffix")
        size = int(float(match.group(1)) * SIZE_UNITS[match.group(2).upper()])

    if size <= 0:
        raise ValueError(f"size must be positive, got {value!r}")

    return size


def sort_bytes(b: int) -> int:
    """Estimated peak memory of sorting one block of b symbols
    """
    return MAX_WORKING_FACTOR * SORT_BYTES_PER_SYMBOL * b


def index_bytes(length: int, sigma: int) -> int:
    """Estimated size of a wavelet tree over `length` symbols: ⌈log σ⌉ levels, each one byte per bit plus the rank and
    select tables of WaveletTree.nbytes
    """
    levels = max(1, ceil(log2(max(sigma, 2))))
    log_l = log2(max(length, 4))
    beta1, zeta0 = max(1, ceil(log_l / 2)), max(1, ceil(log_l ** 2))
    return levels * (length + 8 * (length // beta1 + length // zeta0 + 2))


class RunConfig:
    """Settings of one construction run. resolve() turns them into the block size and merge mode for a given text
    """

    def __init__(self, memory_budget=None, block_size: int = None, mode: str = "auto", threads: int = 1,
                 temp_dir: str = None, isa_rate: int = 32, force_external_gap: bool = None,
                 keep_intermediates: bool = False, bwt_block_size: int = DEFAULT_BWT_BLOCK,
                 gap_restart: int = DEFAULT_GAP_RESTART, gap_buffer: int = None, min_worker_items: int = 1024,
                 spill_blocks: int = DEFAULT_SPILL_BLOCKS) -> None:
        """Initializer for the RunConfig

        Args:
            memory_budget (optional): Bytes or a size string. Defaults to max(n/4, 64K).
            block_size (int, optional): Block size b', wins over the budget. Defaults to deriving it from the budget.
            mode (str, optional): "auto", "balanced" or "skewed". Defaults to "auto".
            threads (int, optional): Worker threads. Defaults to 1.
            temp_dir (str, optional): Parent of the run directory. Defaults to $NANO_BWT_TMPDIR or the system temp dir.
            isa_rate (int, optional): Inverse suffix array sampling rate. Defaults to 32.
            force_external_gap (bool, optional): True spills every gap array, False keeps them all in memory, None
                follows the thread policy. Defaults to None.
            keep_intermediates (bool, optional): Keep the run directory. Defaults to False.
            bwt_block_size (int, optional): d of the BWT codec. Defaults to 4096.
            gap_restart (int, optional): e of dense gap files. Defaults to 4096.
            gap_buffer (int, optional): Gap buffer capacity. Defaults to max(1024, b_r / ⌈log² b_r⌉).
            min_worker_items (int, optional): Fewest right suffixes per backward search worker. Defaults to 1024.
            spill_blocks (int, optional): Plans with more blocks keep their next_break table in the run directory.
                Defaults to 2^20.

        Raises:
            ValueError: If a setting is out of range
        """
        if mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
        if threads < 1:
            raise ValueError(f"threads must be at least 1, got {threads}")
        if isa_rate < 1:
            raise ValueError(f"isa rate must be at least 1, got {isa_rate}")
        if block_size is not None and block_size < 1:
            raise ValueError(f"block size must be positive, got {block_size}")
        if bwt_block_size < 1 or gap_restart < 1:
            raise ValueError("codec block sizes must be positive")

        self.memory_budget: int = None if memory_budget is None else parse_size(memory_budget)
        self.block_size: int = block_size
        self.mode: str = mode
        self.threads: int = threads
        self.temp_dir: str = temp_dir or default_temp_dir()
        self.isa_rate: int = isa_rate
        self.force_external_gap: bool = force_external_gap
        self.keep_intermediates: bool = keep_intermediates
        self.bwt_block_size: int = bwt_block_size
        self.gap_restart: int = gap_restart
        self.gap_buffer: int = gap_buffer
        self.min_worker_items: int = max(1, min_worker_items)
        self.spill_blocks: int = spill_blocks

    def __repr__(self) -> str:
        return (f"RunConfig(memory_budget={self.memory_budget}, block_size={self.block_size}, mode={self.mode!r}, "
                f"threads={self.threads})")

    def budget_for(self, n: int) -> int:
        return self.memory_budget if self.memory_budget is not None else max(n // 4, MINIMAL_DEFAULT_BUDGET)

    def resolve(self, n: int, sigma: int) -> tuple[int, str]:
        """Effective block size b' and merge mode.\n
        auto picks balanced when the rank index over half of the text fits the budget, and skewed otherwise. Balanced
        blocks are as large as one block sort allows, skewed blocks also need their own rank index to fit.

        Args:
            n (int): Text length
            sigma (int): Number of distinct symbols

        Raises:
            ValueError: If n < 1
            BudgetError: If not even a block of two symbols can be sorted within the budget

        Returns:
            tuple[int, str]: Block size and "balanced" or "skewed"
        """
        if n < 1:
            raise ValueError("input must be non-empty")

        budget = self.budget_for(n)
        mode = self.mode

        if mode == "auto":
            mode = "balanced" if index_bytes(ceil(n / 2), sigma) <= budget else "skewed"
        elif mode == "balanced" and index_bytes(ceil(n / 2), sigma) > budget:
            logger.warning("balanced mode needs about %d bytes for its largest rank index, the budget is %d",
                           index_bytes(ceil(n / 2), sigma), budget)

        if self.block_size is not None:
            b = min(self.block_size, n)
            if sort_bytes(b) > budget:
                logger.warning("block size %d needs about %d bytes to sort, more than the budget of %d",
                               b, sort_bytes(b), budget)
            return b, mode

        smallest = min(2, n)

        if sort_bytes(smallest) > budget:
            raise BudgetError(budget, sort_bytes(smallest))

        per_symbol = sort_bytes(1)

        if mode == "skewed":
            per_symbol = max(per_symbol, ceil(index_bytes(n, sigma) / n))

        b = max(smallest, min(n, budget // per_symbol))
        logger.info("budget of %d bytes gives blocks of %d symbols in %s mode", budget, b, mode)
        return b, mode
