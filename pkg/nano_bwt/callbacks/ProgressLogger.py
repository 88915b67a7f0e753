import logging
from nano_bwt.callbacks.callback import Callback

logger = logging.getLogger(__name__)


class ProgressLogger(Callback):
    """Logs stages at info level and every merge at debug level
    """

    def __init__(self, total_merges: int = None) -> None:
        self.total_merges: int = total_merges
        self.done: int = 0

    def on_run_start(self, *args, **kwargs) -> None:
        self.total_merges = kwargs.get("nu", 1) - 1
        logger.info("building the BWT of %d symbols: %d blocks of at most %d, %s mode, depth %d", kwargs.get("n"),
                    kwargs.get("nu"), kwargs.get("block_size"), kwargs.get("mode"), kwargs.get("depth"))

    def on_stage_start(self, *args, **kwargs) -> None:
        logger.info("stage %s", kwargs["stage"])

    def on_stage_end(self, *args, **kwargs) -> None:
        logger.info("stage %s took %.3fs", kwargs["stage"], kwargs["seconds"])

    def on_merge_end(self, *args, **kwargs) -> None:
        self.done += 1
        logger.debug("merge %d/%s: %d suffixes", self.done, self.total_merges, kwargs.get("length"))
