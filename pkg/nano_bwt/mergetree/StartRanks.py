from nano_bwt.textmodel import Text, BlockPlan
from nano_bwt.merge import BlockSearcher
from nano_bwt.parallel import clamp_workers, gap_start_positions
from nano_bwt.mergetree.MergeTree import MergeTree, MergeNode


def node_span(plan: BlockPlan, node: MergeNode) -> tuple[int, int]:
    """Text range [start, end) covered by the blocks of a node
    """
    return plan.start(node.lo), plan.start(node.hi - 1) + plan.length(node.hi - 1)


def worker_count(config, right_length: int) -> int:
    return clamp_workers(config.threads, right_length, config.min_worker_items)


class StartRankTable:
    """Start ranks of every backward search the merge tree will run, filled while the blocks are sorted.\n
    The searches of an inner node start at the last suffix of its right child and, with several workers, at the start
    points of the other workers. The rank of such a suffix among the left child's suffixes is the sum of its ranks in
    each left block, so every sorted block adds its share before its suffix and LCP arrays are dropped.
    """

    def __init__(self, tree: MergeTree, plan: BlockPlan, config) -> None:
        """Initializer for the StartRankTable

        Args:
            tree (MergeTree): Merge tree
            plan (BlockPlan): Block plan of the tree's leaves
            config (RunConfig): Thread settings, which decide the parallel start points
        """
        self.positions: dict[int, list[int]] = {}
        self.ranks: dict[int, list[int]] = {}
        self.workers: dict[int, int] = {}
        self._by_block: dict[int, list[int]] = {block: [] for block in range(plan.nu)}

        for node in tree.inner_nodes():
            start, end = node_span(plan, node.right)
            workers = worker_count(config, end - start)
            self.workers[node.id] = workers
            self.positions[node.id] = [position for position, _ in gap_start_positions(start, end - start, workers)]
            self.ranks[node.id] = [0] * len(self.positions[node.id])

            for block in range(node.left.lo, node.left.hi):
                self._by_block[block].append(node.id)

    def __repr__(self) -> str:
        return f"StartRankTable(nodes={len(self.ranks)})"

    def add_block(self, text: Text, block: int, result) -> None:
        """Adds the ranks of the needed patterns among one sorted block's suffixes
        """
        nodes = self._by_block[block]

        if not nodes:
            return

        searcher = BlockSearcher(text, result)

        for node_id in nodes:
            ranks = self.ranks[node_id]
            for k, position in enumerate(self.positions[node_id]):
                ranks[k] += searcher.rank(position)

    def start_ranks(self, node: MergeNode) -> list[int]:
        return self.ranks[node.id]
