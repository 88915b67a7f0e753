class BwtError(Exception):
    """Base class for every error raised by nano_bwt.
    """


class BudgetError(BwtError):
    """Raised when the memory budget can't hold even a single base block sort.
    """

    def __init__(self, budget: int, minimal_budget: int) -> None:
        """Initializer for BudgetError

        Args:
            budget (int): Budget that was requested, in bytes
            minimal_budget (int): Smallest budget the run could work with, in bytes
        """
        self.budget: int = budget
        self.minimal_budget: int = minimal_budget
        super().__init__(
            f"memory budget of {budget} bytes is infeasible, at least {minimal_budget} bytes are needed")


class CorruptFileError(BwtError, ValueError):
    """Raised when a file doesn't carry a valid header or its payload ends early.
    """


class GapSumError(BwtError):
    """Raised when a gap array doesn't sum to the size of the right side of a merge.
    """


class RepetitionScanError(BwtError):
    """Raised when scanning a generated repetition runs past the text length.
    """
