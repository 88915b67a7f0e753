from itertools import count
from math import ceil, log2


class MergeNode:
    """Node of a merge tree over the block index range [lo, hi). Leaves are single blocks. height is 0 for leaves and
    one more than the taller child otherwise
    """

    def __init__(self, node_id: int, lo: int, hi: int, left: "MergeNode" = None, right: "MergeNode" = None) -> None:
        self.id: int = node_id
        self.lo: int = lo
        self.hi: int = hi
        self.left: MergeNode = left
        self.right: MergeNode = right
        self.parent: MergeNode = None
        self.height: int = 0 if left is None else 1 + max(left.height, right.height)

        for child in (left, right):
            if child is not None:
                child.parent = self

    @property
    def is_leaf(self) -> bool:
        return self.left is None

    @property
    def blocks(self) -> int:
        return self.hi - self.lo

    def __repr__(self) -> str:
        return f"MergeNode(id={self.id}, blocks=[{self.lo}, {self.hi}), height={self.height})"


class MergeTree:
    """Binary tree whose leaves are the ν blocks in text order. Merging the two children of every inner node, children
    first, yields the BWT of the whole text at the root
    """

    def __init__(self, root: MergeNode, nu: int) -> None:
        self.root: MergeNode = root
        self.nu: int = nu
        self.nodes: list[MergeNode] = list(self.postorder())

    def __len__(self) -> int:
        return len(self.nodes)

    def __repr__(self) -> str:
        return f"MergeTree(nu={self.nu}, depth={self.depth})"

    @property
    def depth(self) -> int:
        return self.root.height

    def postorder(self):
        """Children before parents, left before right. This is the serial merge schedule
        """
        stack, visited = [self.root], set()

        while stack:
            node = stack[-1]

            if node.is_leaf or node.id in visited:
                stack.pop()
                yield node
                continue

            visited.add(node.id)
            stack.append(node.right)
            stack.append(node.left)

    def leaves(self) -> list[MergeNode]:
        return sorted((node for node in self.nodes if node.is_leaf), key=lambda node: node.lo)

    def inner_nodes(self) -> list[MergeNode]:
        return [node for node in self.nodes if not node.is_leaf]

    def leaf(self, block: int) -> MergeNode:
        return self.leaves()[block]


def build_tree(nu: int) -> MergeTree:
    """Balanced merge tree: an inner node over k blocks has its ⌈k/2⌉ leftmost blocks in the left subtree

    Args:
        nu (int): Number of blocks

    Raises:
        ValueError: If nu < 1

    Returns:
        MergeTree: Tree of depth ⌈log₂ ν⌉
    """
    if nu < 1:
        raise ValueError(f"a merge tree needs at least one block, got {nu}")

    ids = count()

    def node(lo: int, hi: int) -> MergeNode:
        if hi - lo == 1:
            return MergeNode(next(ids), lo, hi)
        middle = lo + ceil((hi - lo) / 2)
        left, right = node(lo, middle), node(middle, hi)
        return MergeNode(next(ids), lo, hi, left, right)

    return MergeTree(node(0, nu), nu)


def skewed_tree(nu: int) -> MergeTree:
    """Right comb: every inner node has the single block lo on its left and all blocks after it on its right, so only
    one block ever needs a rank index

    Args:
        nu (int): Number of blocks

    Raises:
        ValueError: If nu < 1

    Returns:
        MergeTree: Tree of depth ν - 1
    """
    if nu < 1:
        raise ValueError(f"a merge tree needs at least one block, got {nu}")

    ids = count()
    node = MergeNode(next(ids), nu - 1, nu)

    for block in reversed(range(nu - 1)):
        node = MergeNode(next(ids), block, nu, MergeNode(next(ids), block, block + 1), node)

    return MergeTree(node, nu)


def memory_gap_height(threads: int) -> int:
    """Nodes up to this height merge with in-memory gap arrays when several threads run, -1 means none
    """
    return ceil(log2(threads)) if threads > 1 else -1


MERGE_MODES = {
    "balanced": build_tree,
    "skewed": skewed_tree,
}
