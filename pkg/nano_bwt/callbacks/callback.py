class Callback:
    """Base class used to build new callbacks. A builder calls every hook with keyword arguments only.
    """

    def __init__(self) -> None:
        """Initializer for Callback class
        """
        pass

    def on_run_start(self, *args, **kwargs) -> None:
        """Function called once the block size and merge tree are known
        """
        return

    def on_run_end(self, *args, **kwargs) -> None:
        """Function called after the final BWT was written
        """
        return

    def on_stage_start(self, *args, **kwargs) -> None:
        """Function called at the start of each stage
        """
        return

    def on_stage_end(self, *args, **kwargs) -> None:
        """Function called at the end of each stage
        """
        return

    def on_merge_end(self, *args, **kwargs) -> None:
        """Function called after each merge of two sibling nodes
        """
        return
