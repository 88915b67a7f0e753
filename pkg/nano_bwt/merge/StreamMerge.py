from itertools import islice
import numpy as np
from nano_bwt.errors import GapSumError
from nano_bwt.gaparray import GapArray

EMIT_BYTES = 1 << 16


def left_positions(values: np.ndarray) -> np.ndarray:
    """Merged positions of the left elements: left element i comes after G[0] + ... + G[i] right elements and i left ones
    """
    values = np.asarray(values, dtype=np.int64)
    return np.arange(len(values) - 1) + np.cumsum(values)[:-1]


def interleave(left: np.ndarray, right: np.ndarray, values: np.ndarray) -> np.ndarray:
    """In-memory merge of two arrays along dense gap values
    """
    values = np.asarray(values, dtype=np.int64)

    if len(left) != len(values) - 1 or len(right) != int(values.sum()):
        raise GapSumError(f"gap of length {len(values)} and sum {int(values.sum())} doesn't fit sides of "
                          f"{len(left)} and {len(right)} elements")

    merged = np.empty(len(left) + len(right), dtype=np.result_type(left, right))
    from_left = np.zeros(len(merged), dtype=bool)
    from_left[left_positions(values)] = True
    merged[from_left] = left
    merged[~from_left] = right
    return merged


def iter_symbols(source):
    return iter(source.tolist()) if isinstance(source, np.ndarray) else iter(source)


def merge_streams(left, right, gap, sink=None):
    """Merges two BWTs: G[0] right symbols, one left symbol, G[1] right symbols, one left symbol, ..., G[b_l] right
    symbols.\n
    Arrays with an in-memory gap are merged in one go. Anything else is streamed, holding at most one right group and
    a small output buffer.

    Args:
        left: Left BWT (array or iterable of symbols)
        right: Right BWT (array or iterable of symbols)
        gap: Dense gap array, in memory or file backed
        sink (optional): Object with write(symbols). Defaults to returning an array.

    Raises:
        GapSumError: If a stream runs out early or has symbols left over

    Returns:
        The merged array, or the sink
    """
    if isinstance(left, np.ndarray) and isinstance(right, np.ndarray) and isinstance(gap, GapArray):
        merged = interleave(left, right, gap.values)
        if sink is None:
            return merged
        sink.write(merged)
        return sink

    left_iter, right_iter = iter_symbols(left), iter_symbols(right)
    last = gap.length - 1
    pieces, buffer = [], bytearray()

    for index, count in enumerate(gap.iter_values()):
        if count:
            group = list(islice(right_iter, count))
            if len(group) < count:
                raise GapSumError(f"right stream ended inside gap group {index}")
            buffer.extend(group)

        if index < last:
            symbol = next(left_iter, None)
            if symbol is None:
                raise GapSumError(f"left stream ended before gap index {index}")
            buffer.append(symbol)

        if len(buffer) >= EMIT_BYTES:
            if sink is None:
                pieces.append(np.frombuffer(bytes(buffer), dtype=np.uint8))
            else:
                sink.write(bytes(buffer))
            buffer = bytearray()

    if next(left_iter, None) is not None or next(right_iter, None) is not None:
        raise GapSumError("gap array doesn't consume both streams")

    if sink is not None:
        sink.write(bytes(buffer))
        return sink

    pieces.append(np.frombuffer(bytes(buffer), dtype=np.uint8))
    return np.concatenate(pieces)


def merge_gt(left_gt, right_gt: np.ndarray, sink=None):
    """gt of the merged segment: the left bits keep their meaning, since the merged first suffix is the left first
    suffix, and are followed by the right bits from backward search

    Args:
        left_gt: Left gt bits (array or GtFile)
        right_gt (np.ndarray): Right bits relative to the merged first suffix
        sink (optional): GtWriter. Defaults to returning an array.
    """
    if sink is None:
        left_bits = left_gt if isinstance(left_gt, np.ndarray) else left_gt.read_all()
        return np.concatenate((left_bits, right_gt)).astype(np.uint8)

    if isinstance(left_gt, np.ndarray):
        sink.write(left_gt)
    else:
        chunk = 1 << 20
        for start in range(0, len(left_gt), chunk):
            sink.write(left_gt.read_range(start, start + chunk))

    sink.write(right_gt)
    return sink


def merge_isa(left_samples: np.ndarray, right_samples: np.ndarray, gap) -> np.ndarray:
    """Merges sampled (position, rank) rows. A left rank i moves up by the right elements placed before it,
    G[0] + ... + G[i], and a right rank j moves up by the number of left elements before it

    Args:
        left_samples (np.ndarray): Left rows in rank order
        right_samples (np.ndarray): Right rows in rank order
        gap: Dense gap array

    Returns:
        np.ndarray: Rows of the merged segment in rank order
    """
    left_samples = np.asarray(left_samples, dtype=np.int64).reshape(-1, 2)
    right_samples = np.asarray(right_samples, dtype=np.int64).reshape(-1, 2)
    rows = []
    next_left = next_right = 0
    emitted_right = 0

    for index, count in enumerate(gap.iter_values()):
        while next_right < len(right_samples) and right_samples[next_right, 1] < emitted_right + count:
            rows.append((right_samples[next_right, 0], right_samples[next_right, 1] + index))
            next_right += 1

        emitted_right += count

        if next_left < len(left_samples) and left_samples[next_left, 1] == index:
            rows.append((left_samples[next_left, 0], index + emitted_right))
            next_left += 1

    return np.asarray(rows, dtype=np.int64).reshape(-1, 2)


def merged_first_rank(left_first_rank: int, gap) -> int:
    """Rank of the merged segment's first suffix, which is the left first suffix
    """
    return left_first_rank + sum(islice(gap.iter_values(), left_first_rank + 1))
