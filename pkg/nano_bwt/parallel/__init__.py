from nano_bwt.parallel.Workers import WorkSplit, split_evenly, default_threads, clamp_workers, mapper, worker_pool
from nano_bwt.parallel.ParallelWavelet import parallel_wavelet
from nano_bwt.parallel.ParallelGap import parallel_gap, parallel_radix_sort, gap_start_positions
from nano_bwt.parallel.SplitMerge import (split_for_merge, split_search_for, parallel_merge_streams, merge_part,
                                          SymbolCursor)
from nano_bwt.parallel.ParallelSort import parallel_block_sort, fine_plan, merge_pieces
