import logging
from nano_bwt.textmodel import Text, BlockPlan
from nano_bwt.periodicity import RepetitionInfo, compute_repetition_info
from nano_bwt.blocksort import BlockSortResult, sort_block
from nano_bwt.merge import merge_block_results
from nano_bwt.parallel.Workers import mapper

logger = logging.getLogger(__name__)


def fine_plan(plan: BlockPlan, p: int) -> tuple[BlockPlan, list[range]]:
    """Splits every block of a plan into q = min(p, ⌊length / 2⌋) near-equal pieces, at least one

    Returns:
        tuple[BlockPlan, list[range]]: The finer plan and, per original block, the range of its pieces
    """
    boundaries, groups = [], []

    for start, end in plan:
        length = end - start
        pieces = max(1, min(p, length // 2))
        first = len(boundaries)

        for piece in range(pieces):
            boundaries.append((start + piece * length // pieces, start + (piece + 1) * length // pieces))

        groups.append(range(first, len(boundaries)))

    return BlockPlan.from_boundaries(plan.n, boundaries), groups


def merge_pieces(text: Text, results: list[BlockSortResult]) -> BlockSortResult:
    """Merges sorted adjacent pieces in memory along a balanced tree
    """
    if len(results) == 1:
        return results[0]

    middle = (len(results) + 1) // 2
    return merge_block_results(text, merge_pieces(text, results[:middle]), merge_pieces(text, results[middle:]))


def parallel_block_sort(text: Text, plan: BlockPlan, p: int, repinfo: RepetitionInfo = None, isa_rate: int = 32,
                        executor=None) -> list[BlockSortResult]:
    """Sorts every block of the plan by sorting pieces of about b / p symbols and merging the pieces back in memory.
    Small pieces keep the working strings of all workers within the memory one block sort of size b needs, and
    in-memory gap arrays make the merges free of external I/O.

    Args:
        text (Text): Text, not a power
        plan (BlockPlan): Block plan
        p (int): Number of workers
        repinfo (RepetitionInfo, optional): Repetition analysis of the plan, used when p is 1. Defaults to None.
        isa_rate (int, optional): ISA sampling rate. Defaults to 32.
        executor (optional): Thread pool. Defaults to None.

    Returns:
        list[BlockSortResult]: One result per plan block, equal to what sort_block gives
    """
    run = mapper(executor)

    if p <= 1:
        repinfo = repinfo or compute_repetition_info(text, plan)
        return run(lambda block: sort_block(text, plan, block, repinfo, isa_rate), range(plan.nu))

    pieces, groups = fine_plan(plan, p)
    fine_info = compute_repetition_info(text, pieces)
    logger.debug("sorting %d blocks as %d pieces of at most %d symbols", plan.nu, pieces.nu, pieces.b)
    sorted_pieces = run(lambda piece: sort_block(text, pieces, piece, fine_info, isa_rate), range(pieces.nu))
    return run(lambda group: merge_pieces(text, [sorted_pieces[piece] for piece in group]), groups)
