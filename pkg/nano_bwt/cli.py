"""Command line front end: `nano-bwt build | verify | inspect | bench`.

Exit statuses are 0 on success, 1 when verification finds a mismatch, 2 on usage errors and infeasible budgets,
3 on I/O errors and corrupt files.
"""
import argparse
import logging
import os
import sys
import tempfile
import numpy as np
from nano_bwt.errors import BudgetError, CorruptFileError
from nano_bwt.textmodel import Text
from nano_bwt.extio import BwtFile, open_file, TMPDIR_VARIABLE
from nano_bwt.mergetree import BWTBuilder, RunConfig, parse_size, MODES
from nano_bwt.callbacks import RunReport, CSVLogger, ProgressLogger
from nano_bwt.oracle import naive_bwt

logger = logging.getLogger("nano_bwt")

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3
VERIFY_LIMIT = 10 ** 6
BENCH_SEED = 1234
VERBOSITY = [logging.WARNING, logging.INFO, logging.DEBUG]


def add_run_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--memory", "-m", type=parse_size, default=None,
                        help="Memory budget, e.g. 512K, 64M or 2G. Defaults to a quarter of the input size")
    parser.add_argument("--block-size", "-b", type=int, default=None,
                        help="Block size b', wins over the memory budget")
    parser.add_argument("--mode", choices=MODES, default="auto", help="Shape of the merge tree")
    parser.add_argument("--threads", "-t", type=int, default=1, help="Worker threads")
    parser.add_argument("--temp-dir", default=None,
                        help=f"Directory for intermediate files. Defaults to ${TMPDIR_VARIABLE} or the system temp dir")
    parser.add_argument("--isa-rate", type=int, default=32, help="Inverse suffix array sampling rate")
    parser.add_argument("--keep", action="store_true", help="Keep intermediate files")
    gap = parser.add_mutually_exclusive_group()
    gap.add_argument("--force-external-gap", dest="external_gap", action="store_const", const=True, default=None,
                     help="Spill every gap array to disk")
    gap.add_argument("--memory-gap", dest="external_gap", action="store_const", const=False,
                     help="Keep every gap array in memory")


def build_argparser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nano-bwt", description="Semi-external BWT construction by block merging")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for progress, -vv for details")
    commands = parser.add_subparsers(dest="command", required=True)

    build = commands.add_parser("build", help="Build the BWT of a file")
    build.add_argument("input", help="Raw input file")
    build.add_argument("output", help="Where the BWT file goes")
    build.add_argument("--raw", default=None, help="Also write the decoded BWT as plain bytes to this path")
    add_run_options(build)

    verify = commands.add_parser("verify", help="Compare the pipeline against the brute force BWT")
    verify.add_argument("input", help="Raw input file")
    verify.add_argument("bwt", nargs="?", default=None, help="BWT file to check. Defaults to building one")
    verify.add_argument("--force", action="store_true", help=f"Verify inputs longer than {VERIFY_LIMIT} symbols")
    add_run_options(verify)

    inspect = commands.add_parser("inspect", help="Print the header and statistics of a nano_bwt file")
    inspect.add_argument("path")

    bench = commands.add_parser("bench", help="Build and write per stage timings and sizes as CSV")
    source = bench.add_mutually_exclusive_group(required=True)
    source.add_argument("input", nargs="?", default=None, help="Raw input file")
    source.add_argument("--random", type=int, default=None, metavar="N", help="Use N random symbols instead")
    bench.add_argument("--sigma", type=int, default=256, help="Alphabet size of --random inputs")
    bench.add_argument("--seed", type=int, default=BENCH_SEED, help="Seed of --random inputs")
    bench.add_argument("--csv", default="nano-bwt-bench.csv", help="Where the CSV rows go")
    add_run_options(bench)

    return parser


def run_config(args: argparse.Namespace) -> RunConfig:
    return RunConfig(memory_budget=args.memory, block_size=args.block_size, mode=args.mode, threads=args.threads,
                     temp_dir=args.temp_dir, isa_rate=args.isa_rate, force_external_gap=args.external_gap,
                     keep_intermediates=args.keep)


def cmd_build(args: argparse.Namespace) -> int:
    text = Text.from_file(args.input)
    report = RunReport()
    result = BWTBuilder(run_config(args), [report, ProgressLogger()]).build(text, args.output)

    if args.raw is not None:
        with open(args.raw, "wb") as f:
            f.write(result.read_bwt().tobytes())

    print(f"wrote {args.output}, first suffix at rank {result.first_rank}")
    for line in report.lines():
        print(line)

    return EXIT_OK


def first_mismatch(expected: np.ndarray, actual: np.ndarray) -> int | None:
    common = min(expected.size, actual.size)
    differ = np.flatnonzero(expected[:common] != actual[:common])

    if differ.size:
        return int(differ[0])
    if expected.size != actual.size:
        return common

    return None


def decodable_prefix(bwt: BwtFile) -> np.ndarray:
    """Symbols of a BWT file up to its first undecodable run. A damaged payload then shows up as a mismatch, while
    damaged headers and tables fail on open
    """
    symbols, lengths = [], []

    try:
        for symbol, length in bwt.iter_runs():
            symbols.append(symbol)
            lengths.append(length)
    except CorruptFileError as e:
        logger.warning("%s", e)

    return np.repeat(np.asarray(symbols, dtype=np.uint8), np.asarray(lengths, dtype=np.int64))


def cmd_verify(args: argparse.Namespace) -> int:
    text = Text.from_file(args.input)

    if text.n > VERIFY_LIMIT:
        if not args.force:
            print(f"refusing to verify {text.n} symbols with the brute force oracle (limit {VERIFY_LIMIT}), "
                  f"pass --force to do it anyway", file=sys.stderr)
            return EXIT_USAGE
        logger.warning("verifying %d symbols, the brute force oracle will be slow", text.n)

    if args.bwt is not None:
        with BwtFile(args.bwt) as bwt:
            actual = decodable_prefix(bwt)
    else:
        with tempfile.TemporaryDirectory(prefix="nano-bwt-verify-", dir=args.temp_dir) as directory:
            actual = BWTBuilder(run_config(args)).build(text, os.path.join(directory, "verify.bwt")).read_bwt()

    expected = np.frombuffer(naive_bwt(text.data), dtype=np.uint8)
    mismatch = first_mismatch(expected, np.asarray(actual, dtype=np.uint8))

    if mismatch is not None:
        print(f"MISMATCH at index {mismatch}")
        return EXIT_MISMATCH

    print("OK")
    return EXIT_OK


def cmd_inspect(args: argparse.Namespace) -> int:
    reader = open_file(args.path)

    try:
        for key, value in reader.describe().items():
            print(f"{key}: {value}")
    finally:
        reader.close()

    return EXIT_OK


def cmd_bench(args: argparse.Namespace) -> int:
    if args.random is not None:
        if not 1 <= args.sigma <= 256:
            raise ValueError(f"sigma must lie in [1, 256], got {args.sigma}")
        data = np.random.default_rng(args.seed).integers(0, args.sigma, args.random, dtype=np.uint8)
        text = Text(data)
    else:
        text = Text.from_file(args.input)

    report = RunReport()
    callbacks = [report, CSVLogger(args.csv), ProgressLogger()]

    with tempfile.TemporaryDirectory(prefix="nano-bwt-bench-", dir=args.temp_dir) as directory:
        BWTBuilder(run_config(args), callbacks).build(text, os.path.join(directory, "bench.bwt"))

    print(f"wrote {callbacks[1].filename}")
    for line in report.lines():
        print(line)

    return EXIT_OK


COMMANDS = {
    "build": cmd_build,
    "verify": cmd_verify,
    "inspect": cmd_inspect,
    "bench": cmd_bench,
}


def main(argv: list[str] = None) -> int:
    parser = build_argparser()

    try:
        args = parser.parse_args(argv)
    except SystemExit as exit:
        return EXIT_OK if exit.code == 0 else EXIT_USAGE

    logging.basicConfig(level=VERBOSITY[min(args.verbose, len(VERBOSITY) - 1)],
                        format="%(asctime)s %(levelname)s %(name)s: %(message)s")

    try:
        return COMMANDS[args.command](args)
    except BudgetError as e:
        print(f"error: {e}", file=sys.stderr)
        print(f"minimal budget: {e.minimal_budget} bytes", file=sys.stderr)
        return EXIT_USAGE
    except CorruptFileError as e:
        print(f"error: corrupt file: {e}", file=sys.stderr)
        return EXIT_IO
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
