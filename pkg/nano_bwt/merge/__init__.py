from nano_bwt.merge.SortedSegment import SortedSegment
from nano_bwt.merge.ForwardSearch import SparseTableRMQ, BlockSearcher, forward_rank, forward_start_rank
from nano_bwt.merge.BackwardSearch import MergeInputs, backward_search, compute_gap
from nano_bwt.merge.StreamMerge import merge_streams, merge_gt, merge_isa, merged_first_rank, interleave, left_positions, iter_symbols
from nano_bwt.merge.BlockMerge import merge_block_results, merged_lcp
