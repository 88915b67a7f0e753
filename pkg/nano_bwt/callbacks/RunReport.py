from nano_bwt.accounting import format_size
from nano_bwt.callbacks.callback import Callback


class RunReport(Callback):
    """RunReport callback class. It collects what a build did: the chosen block size, the tree, the time spent in
    each stage, the peak tracked memory, the external I/O per stream class and the sizes of all gap arrays.
    """

    def __init__(self) -> None:
        self.run: dict = {}
        self.stages: dict[str, float] = {}
        self.gaps: list[dict] = []
        self.merges: int = 0
        self.peak_memory: int = 0
        self.io: dict[str, int] = {}

    def on_run_start(self, *args, **kwargs) -> None:
        self.run = dict(kwargs)

    def on_stage_end(self, *args, **kwargs) -> None:
        self.stages[kwargs["stage"]] = self.stages.get(kwargs["stage"], 0.0) + kwargs["seconds"]

    def on_merge_end(self, *args, **kwargs) -> None:
        self.merges += 1
        if kwargs.get("gap") is not None:
            self.gaps.append(dict(kwargs["gap"], node=kwargs["node"].id))

    def on_run_end(self, *args, **kwargs) -> None:
        self.peak_memory = kwargs.get("peak_memory", 0)
        self.io = kwargs.get("io", {})

    @property
    def total_seconds(self) -> float:
        return sum(self.stages.values())

    def as_dict(self) -> dict:
        return {**self.run, "stages": dict(self.stages), "merges": self.merges, "peak_memory": self.peak_memory,
                "io": dict(self.io), "gaps": list(self.gaps)}

    def lines(self) -> list[str]:
        """Human readable report
        """
        lines = [
            f"text length:        {self.run.get('n')}",
            f"distinct symbols:   {self.run.get('sigma')}",
            f"block size:         {self.run.get('block_size')} ({self.run.get('nu')} blocks, {self.run.get('mode')} mode)",
            f"tree depth:         {self.run.get('depth')}",
            f"power shortcut:     {'yes' if self.run.get('power') else 'no'}",
            f"threads:            {self.run.get('threads')}",
            f"peak memory:        {format_size(self.peak_memory)}",
        ]

        for stage, seconds in self.stages.items():
            lines.append(f"stage {stage + ':':13s}{seconds:.3f}s")

        for key, value in self.io.items():
            if value:
                lines.append(f"io {key + ':':16s}{format_size(value)}")

        if self.gaps:
            worst_dense = max(gap["dense_ratio"] for gap in self.gaps)
            worst_sparse = max(gap["sparse_ratio"] for gap in self.gaps)
            lines.append(f"gap arrays:         {len(self.gaps)}, worst dense ratio {worst_dense:.3f}, "
                         f"worst sparse ratio {worst_sparse:.3f}")

        return lines
