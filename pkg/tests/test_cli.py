import csv
import numpy as np
import pytest
from nano_bwt import cli
from nano_bwt.cli import main, first_mismatch, EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_IO
from nano_bwt.extio import BWT_KIND, write_bwt
from nano_bwt.extio.Container import header_size
from nano_bwt.oracle import naive_bwt


@pytest.fixture
def workdir(tmp_path):
    return tmp_path


def write_input(directory, name: str, data: bytes) -> str:
    path = directory / name
    path.write_bytes(data)
    return str(path)


def test_build_banana(workdir, capsys):
    source = write_input(workdir, "banana.txt", b"banana")
    output, raw = str(workdir / "banana.bwt"), workdir / "banana.raw"

    assert main(["build", source, output, "--block-size", "3", "--raw", str(raw), "--temp-dir", str(workdir)]) == EXIT_OK
    assert raw.read_bytes() == b"nnbaaa"

    out = capsys.readouterr().out
    assert "first suffix at rank 3" in out
    assert "block size:         3 (2 blocks, balanced mode)" in out


def test_build_modes_agree(workdir):
    source = write_input(workdir, "in.txt", b"abracadabra" * 7)
    raws = []

    for mode in ("balanced", "skewed"):
        raw = workdir / f"{mode}.raw"
        assert main(["build", source, str(workdir / f"{mode}.bwt"), "--mode", mode, "-b", "6", "--raw", str(raw),
                     "--temp-dir", str(workdir)]) == EXIT_OK
        raws.append(raw.read_bytes())

    assert raws[0] == raws[1]


def test_build_empty_input(workdir, capsys):
    source = write_input(workdir, "empty.txt", b"")

    assert main(["build", source, str(workdir / "out.bwt")]) == EXIT_USAGE
    assert "input must be non-empty" in capsys.readouterr().err


def test_build_infeasible_budget(workdir, capsys):
    source = write_input(workdir, "in.txt", b"mississippi")

    assert main(["build", source, str(workdir / "out.bwt"), "--memory", "64"]) == EXIT_USAGE
    assert "minimal budget: 204 bytes" in capsys.readouterr().err


def test_build_missing_input(workdir):
    assert main(["build", str(workdir / "nope.txt"), str(workdir / "out.bwt")]) == EXIT_IO


def test_usage_errors(workdir):
    source = write_input(workdir, "in.txt", b"banana")

    assert main([]) == EXIT_USAGE
    assert main(["build", source, str(workdir / "out.bwt"), "--memory", "lots"]) == EXIT_USAGE
    assert main(["build", source, str(workdir / "out.bwt"), "--mode", "random"]) == EXIT_USAGE
    assert main(["build", source, str(workdir / "out.bwt"), "--threads", "0"]) == EXIT_USAGE
    assert main(["--help"]) == EXIT_OK


def test_verify_builds_and_compares(workdir, capsys):
    source = write_input(workdir, "in.txt", b"abracadabra")

    assert main(["verify", source, "-b", "3", "--temp-dir", str(workdir)]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "OK"


def test_verify_reports_first_mismatch(workdir, capsys):
    source = write_input(workdir, "banana.txt", b"banana")
    good, bad = str(workdir / "good.bwt"), str(workdir / "bad.bwt")
    write_bwt(good, np.frombuffer(b"nnbaaa", dtype=np.uint8)).close()
    write_bwt(bad, np.frombuffer(b"nnbaba", dtype=np.uint8)).close()

    assert main(["verify", source, good]) == EXIT_OK
    assert main(["verify", source, bad]) == EXIT_MISMATCH
    assert "MISMATCH at index 4" in capsys.readouterr().out


def test_verify_reports_damaged_payload_as_mismatch(workdir, rng, capsys):
    data = rng.integers(0, 256, 3000, dtype=np.uint8).tobytes()
    source = write_input(workdir, "random.bin", data)
    path = workdir / "random.bwt"

    with write_bwt(str(path), np.frombuffer(naive_bwt(data), dtype=np.uint8), d=256) as bwt:
        first, stop = header_size(BWT_KIND), header_size(BWT_KIND) + bwt.payload_bits // 8
    original = path.read_bytes()
    statuses = []

    for offset in np.linspace(first, stop - 1, 40).astype(int).tolist():
        damaged = bytearray(original)
        damaged[offset] ^= 0xFF
        path.write_bytes(bytes(damaged))
        statuses.append(main(["verify", source, str(path)]))

    assert set(statuses) <= {EXIT_OK, EXIT_MISMATCH}
    assert statuses.count(EXIT_MISMATCH) >= 35
    assert "MISMATCH at index" in capsys.readouterr().out


def test_verify_truncated_bwt_file(workdir):
    source = write_input(workdir, "banana.txt", b"banana")
    path = workdir / "banana.bwt"
    write_bwt(str(path), np.frombuffer(b"nnbaaa", dtype=np.uint8)).close()
    path.write_bytes(path.read_bytes()[:12])

    assert main(["verify", source, str(path)]) == EXIT_IO


def test_verify_limit(workdir, monkeypatch, capsys):
    source = write_input(workdir, "in.txt", b"banana")
    monkeypatch.setattr(cli, "VERIFY_LIMIT", 3)

    assert main(["verify", source, "--temp-dir", str(workdir)]) == EXIT_USAGE
    assert "--force" in capsys.readouterr().err
    assert main(["verify", source, "--force", "--temp-dir", str(workdir)]) == EXIT_OK


def test_first_mismatch():
    a = np.frombuffer(b"abcd", dtype=np.uint8)

    assert first_mismatch(a, a.copy()) is None
    assert first_mismatch(a, np.frombuffer(b"abxd", dtype=np.uint8)) == 2
    assert first_mismatch(a, a[:3]) == 3


def test_inspect(workdir, capsys):
    source = write_input(workdir, "in.txt", b"banana")
    output = str(workdir / "banana.bwt")
    main(["build", source, output, "-b", "3", "--temp-dir", str(workdir)])
    capsys.readouterr()

    assert main(["inspect", output]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert "kind: bwt" in lines
    assert "symbols: 6" in lines


def test_inspect_corrupt_file(workdir, capsys):
    path = write_input(workdir, "junk.bwt", b"not a nano_bwt file")

    assert main(["inspect", path]) == EXIT_IO
    assert "corrupt file" in capsys.readouterr().err


def test_bench_random(workdir, capsys):
    report = workdir / "bench.csv"

    assert main(["bench", "--random", "400", "--sigma", "4", "--csv", str(report), "-b", "50",
                 "--temp-dir", str(workdir)]) == EXIT_OK

    with open(report, newline="") as f:
        rows = list(csv.DictReader(f))

    stages = [row["stage"] for row in rows]
    assert {"plan", "repetitions", "sort", "merge", "write"} <= set(stages)
    assert all(row["n"] == "400" for row in rows)
    assert any(stage.startswith("gap node") for stage in stages)
    assert f"wrote {report}" in capsys.readouterr().out


def test_bench_power(workdir):
    source = write_input(workdir, "power.txt", b"ab" * 50)
    report = workdir / "power.csv"

    assert main(["bench", source, "--csv", str(report), "-b", "10", "--temp-dir", str(workdir)]) == EXIT_OK

    with open(report, newline="") as f:
        stages = [row["stage"] for row in csv.DictReader(f)]

    assert stages.index("power shortcut") < stages.index("power")
    assert stages[:2] == ["plan", "repetitions"]


def test_bench_bad_sigma(workdir):
    assert main(["bench", "--random", "10", "--sigma", "300", "--csv", str(workdir / "x.csv")]) == EXIT_USAGE
