import numpy as np
from nano_bwt.succinct import AppendBitVector, HuffmanCode, WaveletTree, build_wavelet, code_bit_tables, node_bit_arrays, symbol_counts_of
from nano_bwt.parallel.Workers import mapper, split_evenly


def parallel_wavelet(seq, code: HuffmanCode, p: int, executor=None) -> WaveletTree:
    """Builds the same wavelet tree as build_wavelet with p workers.\n
    Every worker takes a contiguous range of the sequence and computes its symbol histogram. The histograms tell, per
    inner node, how many bits each range contributes, so the prefix sums over the ranges give every worker its write
    offset into every node. The workers then fill their node slices independently.

    Args:
        seq: Symbol sequence
        code (HuffmanCode): Tree shape
        p (int): Number of workers
        executor (optional): Thread pool. Defaults to running the workers one after another.

    Returns:
        WaveletTree: Tree with node bits identical to the serial build
    """
    seq = np.asarray(bytearray(seq) if isinstance(seq, (bytes, bytearray)) else seq, dtype=np.uint8)

    if p <= 1 or len(code) == 1 or len(seq) < 2:
        return build_wavelet(seq, code)

    run = mapper(executor)
    ranges = split_evenly(len(seq), p).ranges
    histograms = np.stack(run(lambda bounds: np.bincount(seq[bounds[0]:bounds[1]], minlength=256), ranges))
    missing = set(np.flatnonzero(histograms.sum(axis=0)).tolist()) - set(code.codewords)

    if missing:
        raise ValueError(f"symbols {sorted(missing)} have no codeword")

    tables, _ = code_bit_tables(code)
    counts = {node: histograms[:, passes].sum(axis=1) for node, (passes, _) in tables.items()}
    offsets = {node: np.concatenate(([0], np.cumsum(per_range)[:-1])) for node, per_range in counts.items()}
    arrays = {node: np.empty(int(per_range.sum()), dtype=np.uint8) for node, per_range in counts.items()}

    def fill(worker: int) -> None:
        low, high = ranges[worker]
        for node, bits in node_bit_arrays(seq[low:high], code).items():
            start = int(offsets[node][worker])
            arrays[node][start:start + len(bits)] = bits

    run(fill, range(len(ranges)))
    node_bits = {node: AppendBitVector.from_bits(bits) for node, bits in arrays.items()}
    return WaveletTree(node_bits, code, len(seq), symbol_counts_of(seq))
