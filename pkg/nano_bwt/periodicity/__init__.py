from nano_bwt.periodicity.BorderArray import SuccinctBorderArray, border_array, minimal_period_of_prefix, minimal_short_period
from nano_bwt.periodicity.RepetitionInfo import (RepetitionInfo, SpilledNextBreak, compute_repetition_info,
                                                 propagated_period, spill_width)
