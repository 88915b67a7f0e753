import csv
import logging
from nano_bwt.callbacks import Callback, RunReport, CSVLogger, ProgressLogger, CALLBACKS
from nano_bwt.callbacks.CSVLogger import COLUMNS
from nano_bwt.mergetree import run, MergeNode


class Recorder(Callback):
    def __init__(self) -> None:
        super().__init__()
        self.calls = []

    def on_run_start(self, *args, **kwargs) -> None:
        self.calls.append("run_start")

    def on_stage_start(self, *args, **kwargs) -> None:
        self.calls.append(f"start {kwargs['stage']}")

    def on_merge_end(self, *args, **kwargs) -> None:
        self.calls.append("merge")

    def on_run_end(self, *args, **kwargs) -> None:
        self.calls.append("run_end")


def test_hooks_are_noops():
    callback = Callback()

    for hook in ("on_run_start", "on_run_end", "on_stage_start", "on_stage_end", "on_merge_end"):
        assert getattr(callback, hook)(stage="x") is None


def test_registry():
    assert CALLBACKS == {"report": RunReport, "csv": CSVLogger, "progress": ProgressLogger}


def test_hook_order(config_factory, tmp_path):
    recorder = Recorder()
    run(b"abracadabra", config_factory(block_size=3), str(tmp_path / "out.bwt"), [recorder])

    assert recorder.calls == ["start plan", "start repetitions", "run_start", "start sort", "start merge", "merge",
                              "merge", "merge", "start write", "run_end"]


def test_run_report(config_factory, tmp_path):
    report = RunReport()
    run(b"abracadabra" * 4, config_factory(block_size=5, force_external_gap=True), str(tmp_path / "out.bwt"), [report])

    assert set(report.stages) == {"plan", "repetitions", "sort", "merge", "write"}
    assert report.merges == report.run["nu"] - 1 == len(report.gaps)
    assert report.peak_memory > 0
    assert report.io["bwt_written"] > 0
    assert report.total_seconds >= 0
    assert report.as_dict()["merges"] == report.merges

    lines = report.lines()
    assert lines[0] == "text length:        44"
    assert "power shortcut:     no" in lines
    assert any(line.startswith("stage merge:") for line in lines)
    assert any(line.startswith("io bwt_written:") for line in lines)
    assert any(line.startswith("gap arrays:") for line in lines)


def test_run_report_power(config_factory, tmp_path):
    report = RunReport()
    run(b"xyz" * 10, config_factory(block_size=6), str(tmp_path / "out.bwt"), [report])

    assert report.run["power"]
    assert "power" in report.stages
    assert report.merges == 0
    assert "power shortcut:     yes" in report.lines()


def test_csv_logger(config_factory, tmp_path):
    filename = str(tmp_path / "log")
    logger = CSVLogger(filename)
    run(b"mississippi!", config_factory(block_size=3, isa_rate=4), str(tmp_path / "out.bwt"), [logger])

    assert logger.filename == f"{filename}.csv"
    with open(logger.filename, newline="") as f:
        rows = list(csv.reader(f))

    assert rows[0] == COLUMNS
    assert [row[0] for row in rows[1:4]] == ["plan", "repetitions", "sort"]
    assert [row[0] for row in rows[-2:]] == ["merge", "write"]
    assert all(row[1] == "12" and row[4] == "balanced" for row in rows[1:])
    assert sum(row[0].startswith("gap node") for row in rows) == 3


def test_csv_logger_append(config_factory, tmp_path):
    filename = str(tmp_path / "log.csv")
    CSVLogger(filename)
    run(b"banana", config_factory(block_size=3), str(tmp_path / "a.bwt"), [CSVLogger(filename, append=True)])
    run(b"banana", config_factory(block_size=3), str(tmp_path / "b.bwt"), [CSVLogger(filename, append=True)])

    with open(filename, newline="") as f:
        rows = list(csv.reader(f))

    assert sum(row == COLUMNS for row in rows) == 1
    assert sum(row[0] == "write" for row in rows) == 2


def test_progress_logger(caplog):
    progress = ProgressLogger()

    with caplog.at_level(logging.DEBUG, logger="nano_bwt"):
        progress.on_run_start(n=10, nu=3, block_size=4, mode="skewed", depth=2)
        progress.on_stage_start(stage="merge")
        progress.on_merge_end(node=MergeNode(0, 0, 1), length=8)
        progress.on_stage_end(stage="merge", seconds=0.5)

    assert progress.total_merges == 2
    assert progress.done == 1
    assert "merge 1/2: 8 suffixes" in caplog.text
    assert "stage merge took 0.500s" in caplog.text
