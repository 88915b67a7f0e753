import copy
import logging
import os
import tempfile
from contextlib import contextmanager
from time import time
import numpy as np
from nano_bwt.accounting import MemoryTracker, IoStats
from nano_bwt.textmodel import Text, plan_blocks
from nano_bwt.periodicity import RepetitionInfo, compute_repetition_info
from nano_bwt.blocksort import sort_block
from nano_bwt.extio import BwtFile, Workspace, copy_bwt, write_bwt
from nano_bwt.merge import SortedSegment
from nano_bwt.parallel import parallel_block_sort, worker_pool
from nano_bwt.mergetree.MergeTree import MERGE_MODES, MergeTree
from nano_bwt.mergetree.RunConfig import RunConfig, sort_bytes
from nano_bwt.mergetree.StartRanks import StartRankTable
from nano_bwt.mergetree.NodeMerge import MergeContext, merge_nodes, release_segment, store_segment

logger = logging.getLogger(__name__)


class BuildResult:
    """Outcome of a build: the final BWT file and the byproducts of the root merge
    """

    def __init__(self, path: str, n: int, first_rank: int, isa_samples: np.ndarray, isa_rate: int, block_size: int,
                 mode: str, depth: int, power: bool) -> None:
        """Initializer for the BuildResult

        Args:
            path (str): Final BwtFile
            n (int): Text length
            first_rank (int): Rank of the circular suffix at position 0
            isa_samples (np.ndarray): (position, rank) rows of every position divisible by isa_rate, in rank order
            isa_rate (int): Sampling rate
            block_size (int): Block size b of the plan
            mode (str): "balanced" or "skewed"
            depth (int): Merge tree depth
            power (bool): Whether the text was handled as a power α^k
        """
        self.path: str = path
        self.n: int = n
        self.first_rank: int = first_rank
        self.isa_samples: np.ndarray = isa_samples
        self.isa_rate: int = isa_rate
        self.block_size: int = block_size
        self.mode: str = mode
        self.depth: int = depth
        self.power: bool = power

    def __repr__(self) -> str:
        return f"BuildResult(path={self.path!r}, n={self.n}, mode={self.mode!r}, power={self.power})"

    def read_bwt(self) -> np.ndarray:
        with BwtFile(self.path) as bwt:
            return bwt.read_all()

    def sampled_sa(self) -> np.ndarray:
        """(rank, position) rows of the sampled positions in rank order
        """
        return self.isa_samples[:, ::-1].copy()


class BWTBuilder:
    """Builds the BWT of a text by sorting blocks and merging them along a merge tree.\n
    The run goes through these stages:
    1. plan blocks of size b from the budget,
    2. analyze repetitions, taking the shortcut for powers α^k,
    3. sort every block, adding its share to the start ranks of later merges,
    4. merge children before parents until the root holds the BWT of the whole text,
    5. write the root's BWT to the output file.
    """

    def __init__(self, config: RunConfig = None, callbacks: list = None, tracker: MemoryTracker = None,
                 stats: IoStats = None) -> None:
        """Initializer for the BWTBuilder

        Args:
            config (RunConfig, optional): Run settings. Defaults to RunConfig().
            callbacks (list, optional): Callback objects notified about stages and merges. Defaults to None.
            tracker (MemoryTracker, optional): Allocation tracker. Defaults to a fresh one.
            stats (IoStats, optional): I/O counters. Defaults to fresh ones.
        """
        self.config: RunConfig = config or RunConfig()
        self.callbacks: list = list(callbacks or [])
        self.tracker: MemoryTracker = tracker or MemoryTracker()
        self.stats: IoStats = stats or IoStats()

    def notify(self, hook: str, **kwargs) -> None:
        for callback in self.callbacks:
            getattr(callback, hook)(**kwargs)

    @contextmanager
    def stage(self, name: str):
        """Times a stage for the callbacks. Whatever the body puts into the yielded dict is passed on to on_stage_end
        """
        info = {}
        self.notify("on_stage_start", stage=name)
        start = time()
        yield info
        self.notify("on_stage_end", stage=name, seconds=time() - start, **info)

    def output_path(self, output_path: str = None) -> str:
        if output_path is not None:
            return output_path

        os.makedirs(self.config.temp_dir, exist_ok=True)
        handle, path = tempfile.mkstemp(prefix="nano-bwt-", suffix=".bwt", dir=self.config.temp_dir)
        os.close(handle)
        return path

    def build(self, text, output_path: str = None) -> BuildResult:
        """Runs the whole construction

        Args:
            text: Text or raw input symbols
            output_path (str, optional): Where the BwtFile goes. Defaults to a fresh file in the temp dir.

        Raises:
            ValueError: If the text is empty or the config is invalid
            BudgetError: If the budget can't hold a single block sort

        Returns:
            BuildResult: Final BWT and byproducts
        """
        text = text if isinstance(text, Text) else Text(text)
        config = self.config
        sigma = int(np.count_nonzero(text.histogram()))
        b_target, mode = config.resolve(text.n, sigma)
        output_path = self.output_path(output_path)

        with self.stage("plan"):
            plan = plan_blocks(text.n, b_target)

        with self.stage("repetitions"):
            if text.n == 1:
                # a single symbol is the power a^1
                repinfo = RepetitionInfo([None], [False], np.ones(1, dtype=np.int64), 1, 1)
            else:
                repinfo = compute_repetition_info(text, plan)

        if repinfo.is_power:
            return self.build_power(text, repinfo, sigma, plan.b, mode, output_path)

        tree = MERGE_MODES[mode](plan.nu)
        self.notify("on_run_start", n=text.n, sigma=sigma, block_size=plan.b, nu=plan.nu, mode=mode,
                    threads=config.threads, depth=tree.depth, power=False)
        logger.info("building the BWT of %d symbols with %d blocks of at most %d in %s mode", text.n, plan.nu, plan.b, mode)

        with Workspace(config.temp_dir, config.keep_intermediates, self.stats) as workspace, \
                worker_pool(config.threads) as executor, worker_pool(config.threads) as sort_executor:
            ranks = StartRankTable(tree, plan, config)

            if plan.nu > config.spill_blocks:
                repinfo.spill(workspace.temp_path("next"))

            context = MergeContext(text, plan, config, workspace, ranks, self.tracker, self.stats, executor,
                                   sort_executor, self.notify, collect_gap_stats=bool(self.callbacks))

            with self.stage("sort"):
                products = self.sort_blocks(context, tree, repinfo)

            with self.stage("merge"):
                for node in tree.inner_nodes():
                    products[node.id] = merge_nodes(context, node, products.pop(node.left.id), products.pop(node.right.id))

            with self.stage("write") as info:
                root = products.pop(tree.root.id)
                final = self.write_output(root.bwt, output_path)
                info["encoded_bytes"] = os.path.getsize(output_path)
                final.close()
                result = BuildResult(output_path, text.n, root.first_rank, root.isa_samples(), config.isa_rate,
                                     plan.b, mode, tree.depth, False)
                release_segment(context, root)

        self.notify("on_run_end", result=result, peak_memory=self.tracker.peak, io=self.stats.as_dict())
        return result

    def sort_blocks(self, context: MergeContext, tree: MergeTree, repinfo: RepetitionInfo) -> dict[int, SortedSegment]:
        """Sorts every block and keeps the products the merges need: in memory when the parent merges in memory,
        otherwise in the leaf's files. Suffix and LCP arrays are dropped once the start ranks got their share
        """
        text, plan, config = context.text, context.plan, context.config
        products = {}

        def keep(block: int, result) -> None:
            context.ranks.add_block(text, block, result)
            leaf = tree.leaf(block)
            segment = SortedSegment.from_block(result)
            if leaf.parent is not None and not context.output_in_memory(leaf):
                segment = store_segment(context, leaf, segment)
            products[leaf.id] = segment

        if config.threads > 1:
            with self.tracker.track("block sort", config.threads * sort_bytes(-(-plan.b // config.threads))):
                results = parallel_block_sort(text, plan, config.threads, repinfo, config.isa_rate, context.executor)
            for block, result in enumerate(results):
                keep(block, result)
            return products

        for block in range(plan.nu):
            with self.tracker.track("block sort", sort_bytes(plan.length(block))):
                result = sort_block(text, plan, block, repinfo, config.isa_rate)
            keep(block, result)

        return products

    def write_output(self, bwt, output_path: str) -> BwtFile:
        d = self.config.bwt_block_size

        if isinstance(bwt, np.ndarray):
            return write_bwt(output_path, bwt, d, self.stats)

        return copy_bwt(bwt, output_path, d, self.stats)

    def build_power(self, text: Text, repinfo: RepetitionInfo, sigma: int, b: int, mode: str, output_path: str) -> BuildResult:
        """BWT of α^k: the circular suffixes at positions congruent modulo |α| are equal and ordered by position, so
        the BWT of α with every symbol repeated k times is the answer
        """
        root_length, k = repinfo.power_root, repinfo.power_exponent
        self.notify("on_run_start", n=text.n, sigma=sigma, block_size=b, nu=1, mode=mode, threads=self.config.threads,
                    depth=0, power=True)
        logger.info("text is a power: %d copies of a root of length %d", k, root_length)

        with self.stage("power") as info:
            root_bwt, root_ranks = root_order(Text(text.data[:root_length]), self.config.isa_rate)
            final = write_bwt(output_path, np.repeat(root_bwt, k), self.config.bwt_block_size, self.stats)
            final.close()
            info["encoded_bytes"] = os.path.getsize(output_path)

        positions = np.arange(0, text.n, self.config.isa_rate, dtype=np.int64)
        ranks = root_ranks[positions % root_length] * k + positions // root_length
        order = np.argsort(ranks, kind="stable")
        samples = np.stack((positions[order], ranks[order]), axis=1)
        result = BuildResult(output_path, text.n, int(root_ranks[0]) * k, samples, self.config.isa_rate, b, mode, 0, True)
        self.notify("on_run_end", result=result, peak_memory=self.tracker.peak, io=self.stats.as_dict())
        return result


def root_order(root: Text, isa_rate: int = 32) -> tuple[np.ndarray, np.ndarray]:
    """BWT and full rank array of a primitive root, sorted as one block
    """
    if root.n == 1:
        return root.data.copy(), np.zeros(1, dtype=np.int64)

    plan = plan_blocks(root.n, root.n)
    result = sort_block(root, plan, 0, compute_repetition_info(root, plan), isa_rate)
    ranks = np.empty(root.n, dtype=np.int64)
    ranks[result.sa] = np.arange(root.n)
    return result.bwt, ranks


def run(text, config: RunConfig = None, output_path: str = None, callbacks: list = None) -> BuildResult:
    return BWTBuilder(config, callbacks).build(text, output_path)


def run_skewed(text, config: RunConfig = None, output_path: str = None, callbacks: list = None) -> BuildResult:
    """run() with the skewed merge tree: one single block on the left of every merge
    """
    config = copy.copy(config or RunConfig())
    config.mode = "skewed"
    return BWTBuilder(config, callbacks).build(text, output_path)
