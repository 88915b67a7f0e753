from nano_bwt.oracle.naive import (OracleResult, naive_circular_sa, naive_bwt, naive_gap, naive_borders, naive_block_lcp,
                                   naive_propagated, naive_has_period, inverse_bwt)
