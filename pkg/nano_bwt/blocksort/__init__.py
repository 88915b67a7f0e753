from nano_bwt.blocksort.SuffixArray import suffix_array, lcp_array
from nano_bwt.blocksort.BlockSortResult import BlockSortResult
from nano_bwt.blocksort.BlockSort import ExtendedBlock, extend_block, sort_block, filtered_order, repetition_end, MAX_WORKING_FACTOR
