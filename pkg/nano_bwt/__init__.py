import nano_bwt.textmodel
import nano_bwt.succinct
import nano_bwt.periodicity
import nano_bwt.blocksort
import nano_bwt.gaparray
import nano_bwt.extio
import nano_bwt.merge
import nano_bwt.parallel
import nano_bwt.mergetree
import nano_bwt.callbacks
import nano_bwt.oracle
from nano_bwt.textmodel import Text
from nano_bwt.mergetree import BWTBuilder, BuildResult, RunConfig, run, run_skewed
from nano_bwt.errors import BwtError, BudgetError, CorruptFileError, GapSumError, RepetitionScanError

__version__ = "0.1.0"
