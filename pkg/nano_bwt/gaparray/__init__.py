from nano_bwt.gaparray.GapArray import (GapArray, SparseGapArray, DenseGapBuilder, SparseGapBuilder, memory_sink, dense_bound,
                                         sparse_bound, gap_statistics)
from nano_bwt.gaparray.RadixSort import radix_sort, stable_bucket_pass, bucket_count_for
from nano_bwt.gaparray.GapAccumulator import GapAccumulator, merge_gap, densify, discard, default_buffer_capacity, interval_bounds, pending_bits
