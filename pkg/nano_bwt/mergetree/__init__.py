from nano_bwt.mergetree.MergeTree import MergeNode, MergeTree, build_tree, skewed_tree, memory_gap_height, MERGE_MODES
from nano_bwt.mergetree.RunConfig import RunConfig, parse_size, index_bytes, sort_bytes, MODES
from nano_bwt.mergetree.StartRanks import StartRankTable, node_span
from nano_bwt.mergetree.NodeMerge import MergeContext, merge_nodes
from nano_bwt.mergetree.BWTBuilder import BWTBuilder, BuildResult, run, run_skewed, root_order
