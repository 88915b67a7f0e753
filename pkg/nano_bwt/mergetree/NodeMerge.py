import logging
import numpy as np
from nano_bwt.textmodel import Text, BlockPlan
from nano_bwt.succinct import build_huffman, build_wavelet
from nano_bwt.gaparray import GapAccumulator, memory_sink, discard, gap_statistics
from nano_bwt.extio import (BwtWriter, GtWriter, MultiPartBwt, Workspace, anchor_stride_for, gap_file_sink, write_bwt,
                           write_gt, write_isa)
from nano_bwt.merge import MergeInputs, SortedSegment, compute_gap, merge_gt, merge_isa, merge_streams, merged_first_rank
from nano_bwt.parallel import mapper, parallel_gap, parallel_merge_streams, parallel_wavelet, split_for_merge
from nano_bwt.mergetree.MergeTree import MergeNode, memory_gap_height
from nano_bwt.mergetree.StartRanks import StartRankTable

logger = logging.getLogger(__name__)


class MergeContext:
    """Everything the merges of one run share
    """

    def __init__(self, text: Text, plan: BlockPlan, config, workspace: Workspace, ranks: StartRankTable,
                 tracker=None, stats=None, executor=None, sort_executor=None, notify=None,
                 collect_gap_stats: bool = False) -> None:
        """Initializer for the MergeContext

        Args:
            text (Text): Text
            plan (BlockPlan): Block plan
            config (RunConfig): Run settings
            workspace (Workspace): Run directory
            ranks (StartRankTable): Filled start rank table
            tracker (MemoryTracker, optional): Allocation tracker. Defaults to None.
            stats (IoStats, optional): I/O counters. Defaults to None.
            executor (optional): Pool for backward search and merge workers. Defaults to None.
            sort_executor (optional): Separate pool for the gap buffer radix sort, which runs while a search worker holds
                the accumulator lock. Defaults to None.
            notify (optional): Callable(hook, **kwargs) forwarding to callbacks. Defaults to None.
            collect_gap_stats (bool, optional): Measure every final gap array. Defaults to False.
        """
        self.text: Text = text
        self.plan: BlockPlan = plan
        self.config = config
        self.workspace: Workspace = workspace
        self.ranks: StartRankTable = ranks
        self.tracker = tracker
        self.stats = stats
        self.executor = executor
        self.sort_executor = sort_executor
        self.notify = notify or (lambda hook, **kwargs: None)
        self.collect_gap_stats: bool = collect_gap_stats
        self.memory_height: int = memory_gap_height(config.threads)

    def gap_in_memory(self, node: MergeNode) -> bool:
        """Nodes close to the leaves keep their gap array in memory when several threads run, unless forced otherwise
        """
        if self.config.force_external_gap is not None:
            return not self.config.force_external_gap

        return node.height <= self.memory_height

    def output_in_memory(self, node: MergeNode) -> bool:
        """A node's product stays in memory when its parent merges in memory. The root always goes to a file
        """
        return node.parent is not None and self.gap_in_memory(node.parent)

    def track(self, label: str, nbytes: int):
        return self.tracker.allocate(label, nbytes) if self.tracker is not None else None


def store_segment(context: MergeContext, node: MergeNode, segment: SortedSegment) -> SortedSegment:
    """Writes an in-memory segment to the node's files in the workspace
    """
    workspace, stats = context.workspace, context.stats
    bwt = write_bwt(workspace.path(node.id, "bwt"), segment.bwt, context.config.bwt_block_size, stats)
    gt = write_gt(workspace.path(node.id, "gt"), segment.gt, stats)
    isa = write_isa(workspace.path(node.id, "isa"), segment.isa, context.config.isa_rate, stats)
    return SortedSegment(segment.start, segment.length, segment.first_rank, bwt, gt, isa, node.id)


def release_segment(context: MergeContext, segment: SortedSegment) -> None:
    segment.close()

    if segment.node is not None:
        context.workspace.release(segment.node)


def build_index(context: MergeContext, symbols: np.ndarray):
    code = build_huffman(dict(enumerate(np.bincount(symbols, minlength=256).tolist())))

    if context.config.threads > 1:
        return parallel_wavelet(symbols, code, context.config.threads, context.executor)

    return build_wavelet(symbols, code)


def merge_nodes(context: MergeContext, node: MergeNode, left: SortedSegment, right: SortedSegment) -> SortedSegment:
    """Merges the products of a node's children.\n
    Builds the rank index over the left BWT, runs backward search over the right segment (split among workers when
    several are allowed), then interleaves the BWTs, gt bits and ISA samples along the gap array. The product stays in
    memory or goes to the node's files, and the children's files are released.

    Args:
        context (MergeContext): Shared run state
        node (MergeNode): Inner node
        left (SortedSegment): Product of the left child
        right (SortedSegment): Product of the right child

    Returns:
        SortedSegment: Product of the node
    """
    config, workspace = context.config, context.workspace
    in_memory = context.gap_in_memory(node)
    index = build_index(context, left.bwt_symbols())
    index_allocation = context.track("rank index", index.nbytes())
    starts = context.ranks.start_ranks(node)
    inputs = MergeInputs(context.text, left, right, index, starts[0])

    if in_memory:
        sink_factory = memory_sink
    else:
        sink_factory = gap_file_sink(workspace.gap_path_factory(node.id), config.gap_restart,
                                     anchor_stride_for(context.text.n), context.stats)

    workers = context.ranks.workers[node.id]
    accumulator = GapAccumulator(left.length + 1, right.length, config.gap_buffer, not in_memory, sink_factory,
                                 context.tracker, config.threads, mapper(context.sort_executor))

    if workers > 1:
        gap, right_gt = parallel_gap(inputs, accumulator, workers, starts, executor=context.executor)
    else:
        gap, right_gt = compute_gap(inputs, accumulator)

    if index_allocation is not None:
        index_allocation.release()
    del index, inputs

    gap_allocation = context.track("gap array", 8 * gap.length) if in_memory else None
    first_rank = merged_first_rank(left.first_rank, gap)
    isa = merge_isa(left.isa_samples(), right.isa_samples(), gap)
    start, length = left.start, left.length + right.length

    if context.output_in_memory(node):
        bwt = merge_streams(left.bwt_symbols(), right.bwt_symbols(), gap)
        merged = SortedSegment(start, length, first_rank, bwt, merge_gt(left.gt_bits(), right_gt), isa, None)
    else:
        merged = SortedSegment(start, length, first_rank, merge_bwt(context, node, left, right, gap, workers),
                               merge_gt(left.gt, right_gt, GtWriter(workspace.path(node.id, "gt"), context.stats)).close(),
                               write_isa(workspace.path(node.id, "isa"), isa, config.isa_rate, context.stats), node.id)

    statistics = gap_statistics(gap) if context.collect_gap_stats else None
    logger.debug("merged node %d over blocks [%d, %d): %d + %d suffixes, gap in %s", node.id, node.lo, node.hi,
                 left.length, right.length, "memory" if in_memory else "files")

    if gap_allocation is not None:
        gap_allocation.release()
    if not config.keep_intermediates:
        discard(gap)

    release_segment(context, left)
    release_segment(context, right)
    context.notify("on_merge_end", node=node, length=length, in_memory=in_memory, workers=workers, gap=statistics)
    return merged


def merge_bwt(context: MergeContext, node: MergeNode, left: SortedSegment, right: SortedSegment, gap, workers: int):
    """Writes the merged BWT of a node to its files, as one part per worker when the merge runs in parallel
    """
    config, workspace, stats = context.config, context.workspace, context.stats
    d = config.bwt_block_size

    if workers > 1:
        split = split_for_merge(gap, left.length, right.length, workers, d, executor=context.executor)
        parts = parallel_merge_streams(left.bwt, right.bwt, gap, split,
                                       lambda part: BwtWriter(workspace.path(node.id, "bwt", part), d, stats),
                                       context.executor)
        return parts[0] if len(parts) == 1 else MultiPartBwt(parts)

    writer = BwtWriter(workspace.path(node.id, "bwt"), d, stats)
    left_symbols = left.iter_bwt() if left.external else left.bwt
    right_symbols = right.iter_bwt() if right.external else right.bwt
    return merge_streams(left_symbols, right_symbols, gap, writer).close()
