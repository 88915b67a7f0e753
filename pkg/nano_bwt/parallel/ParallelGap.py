import logging
from math import ceil
import numpy as np
from nano_bwt.gaparray import radix_sort, interval_bounds
from nano_bwt.merge import MergeInputs, backward_search
from nano_bwt.parallel.Workers import mapper

logger = logging.getLogger(__name__)


def gap_start_positions(right_start: int, right_length: int, p: int) -> list[tuple[int, int]]:
    """Start position and step count of every backward search worker: worker j starts at
    e + b_r - 1 - j⌈b_r / p⌉ and walks left until the next worker's start
    """
    if right_length == 0:
        return []

    stride = ceil(right_length / max(1, p))
    last = right_start + right_length - 1
    starts = []

    for worker in range(p):
        position = last - worker * stride
        if position < right_start:
            break
        starts.append((position, min(stride, position - right_start + 1)))

    return starts


def parallel_gap(inputs: MergeInputs, accumulator, p: int, start_ranks: list[int] = None, rank_of=None, executor=None):
    """Runs p backward searches over disjoint stretches of the right segment at once. Each worker starts from the
    forward searched rank of its own first suffix. All of them feed one accumulator, whose lock makes the fill position
    update indivisible and stalls everyone while a full buffer is flushed.

    Args:
        inputs (MergeInputs): Merge inputs; inputs.start_rank is the rank of the rightmost suffix
        accumulator: Shared GapAccumulator
        p (int): Number of workers
        start_ranks (list[int], optional): Start rank per worker, as laid out by gap_start_positions. Defaults to None.
        rank_of (optional): Callable giving the start rank of a position when start_ranks is missing. Defaults to None.
        executor (optional): Thread pool for the workers. It must not be the pool the accumulator sorts with.

    Raises:
        ValueError: If neither start_ranks nor rank_of can give every worker its rank

    Returns:
        tuple: Dense gap array and the right gt bits, identical to compute_gap
    """
    right = inputs.right
    starts = gap_start_positions(right.start, right.length, p)

    if start_ranks is None:
        if rank_of is None and len(starts) > 1:
            raise ValueError("parallel backward search needs the start rank of every worker")
        start_ranks = [inputs.start_rank] + [rank_of(position) for position, _ in starts[1:]]
    elif len(start_ranks) < len(starts):
        raise ValueError(f"{len(starts)} workers but only {len(start_ranks)} start ranks")

    right_gt = np.zeros(right.length, dtype=np.uint8)

    def search(worker: int) -> None:
        position, steps = starts[worker]
        backward_search(inputs, position, start_ranks[worker], steps, accumulator, right_gt)

    mapper(executor)(search, range(len(starts)))
    logger.debug("parallel gap over %d suffixes with %d workers", right.length, len(starts))
    return accumulator.finalize(), right_gt


def parallel_radix_sort(values, key_limit: int, p: int, executor=None) -> np.ndarray:
    """Two phase radix sort where each of p workers places its own interval after the bucket offsets were computed from
    the per-interval histograms
    """
    values = np.asarray(values, dtype=np.int64)
    return radix_sort(values, key_limit, interval_bounds(len(values), p), mapper(executor))
