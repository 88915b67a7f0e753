import itertools
import logging
import os
import shutil
import tempfile
import threading

logger = logging.getLogger(__name__)

TMPDIR_VARIABLE = "NANO_BWT_TMPDIR"


def default_temp_dir() -> str:
    return os.environ.get(TMPDIR_VARIABLE) or tempfile.gettempdir()


class Workspace:
    """Run directory for intermediate files. Paths are handed out per (node id, stream kind), and a node's files are
    removed together once its parent merge is done.
    """

    def __init__(self, temp_dir: str = None, keep: bool = False, stats=None) -> None:
        """Initializer for the Workspace

        Args:
            temp_dir (str, optional): Parent directory. Defaults to $NANO_BWT_TMPDIR or the platform temp dir.
            keep (bool, optional): Keep every file and the directory. Defaults to False.
            stats (IoStats, optional): I/O counters handed to readers and writers. Defaults to None.
        """
        parent = temp_dir or default_temp_dir()
        os.makedirs(parent, exist_ok=True)
        self.root: str = tempfile.mkdtemp(prefix="nano-bwt-", dir=parent)
        self.keep: bool = keep
        self.stats = stats
        self._owned: dict[object, list[str]] = {}
        self._counter = itertools.count()
        self._lock = threading.Lock()
        logger.debug("workspace at %s", self.root)

    def __enter__(self) -> "Workspace":
        return self

    def __exit__(self, *exc) -> None:
        self.close()

    def path(self, node, kind: str, part: int = None) -> str:
        """Path of one stream of a node, registered for release(node)
        """
        name = f"node{node}.{kind}" if part is None else f"node{node}.{kind}.{part}"
        path = os.path.join(self.root, name)

        with self._lock:
            self._owned.setdefault(node, []).append(path)

        return path

    def temp_path(self, kind: str) -> str:
        """Fresh path for a short lived file, e.g. a pending gap array
        """
        return os.path.join(self.root, f"tmp{next(self._counter)}.{kind}")

    def gap_path_factory(self, node):
        """Path factory for gap array sinks. Pending arrays get temporary names, they're discarded once merged
        """

        def factory(dense: bool) -> str:
            return self.temp_path("dgap" if dense else "sgap")

        return factory

    def release(self, node) -> None:
        """Removes every file registered for a node, unless the workspace keeps its files
        """
        with self._lock:
            paths = self._owned.pop(node, [])

        if self.keep:
            return

        for path in paths:
            if os.path.exists(path):
                os.remove(path)

    def close(self) -> None:
        if self.keep:
            logger.info("keeping intermediate files in %s", self.root)
            return

        shutil.rmtree(self.root, ignore_errors=True)
