import numpy as np

S_TYPE = 1
L_TYPE = 0


def _type_map(string: list[int]) -> bytearray:
    types = bytearray(len(string) + 1)
    types[-1] = S_TYPE

    if not string:
        return types

    types[-2] = L_TYPE

    for i in range(len(string) - 2, -1, -1):
        if string[i] > string[i + 1] or (string[i] == string[i + 1] and types[i + 1] == L_TYPE):
            types[i] = L_TYPE
        else:
            types[i] = S_TYPE

    return types


def _is_lms(offset: int, types: bytearray) -> bool:
    return offset > 0 and types[offset] == S_TYPE and types[offset - 1] == L_TYPE


def _lms_substrings_equal(string: list[int], types: bytearray, a: int, b: int) -> bool:
    if a == len(string) or b == len(string):
        return False

    i = 0

    while True:
        a_lms = _is_lms(a + i, types)
        b_lms = _is_lms(b + i, types)

        if i > 0 and a_lms and b_lms:
            return True
        if a_lms != b_lms or string[a + i] != string[b + i]:
            return False

        i += 1


def _bucket_heads(sizes: list[int]) -> list[int]:
    heads, offset = [], 1
    for size in sizes:
        heads.append(offset)
        offset += size
    return heads


def _bucket_tails(sizes: list[int]) -> list[int]:
    tails, offset = [], 1
    for size in sizes:
        offset += size
        tails.append(offset - 1)
    return tails


def _induce_l(string: list[int], sa: list[int], sizes: list[int], types: bytearray) -> None:
    heads = _bucket_heads(sizes)

    for i in range(len(sa)):
        j = sa[i] - 1
        if sa[i] == -1 or j < 0 or types[j] != L_TYPE:
            continue
        sa[heads[string[j]]] = j
        heads[string[j]] += 1


def _induce_s(string: list[int], sa: list[int], sizes: list[int], types: bytearray) -> None:
    tails = _bucket_tails(sizes)

    for i in range(len(sa) - 1, -1, -1):
        j = sa[i] - 1
        if j < 0 or types[j] != S_TYPE:
            continue
        sa[tails[string[j]]] = j
        tails[string[j]] -= 1


def _induced_sort(string: list[int], alphabet_size: int) -> list[int]:
    """Suffix array of string with a virtual sentinel smaller than every symbol at position len(string).
    The returned list starts with that sentinel position
    """
    types = _type_map(string)
    sizes = [0] * alphabet_size
    for symbol in string:
        sizes[symbol] += 1

    sa = [-1] * (len(string) + 1)
    tails = _bucket_tails(sizes)
    for i in range(len(string)):
        if _is_lms(i, types):
            sa[tails[string[i]]] = i
            tails[string[i]] -= 1
    sa[0] = len(string)

    _induce_l(string, sa, sizes, types)
    _induce_s(string, sa, sizes, types)

    names = [-1] * (len(string) + 1)
    name = 0
    names[sa[0]] = name
    last = sa[0]

    for offset in sa[1:]:
        if not _is_lms(offset, types):
            continue
        if not _lms_substrings_equal(string, types, last, offset):
            name += 1
        last = offset
        names[offset] = name

    summary_offsets = [index for index, value in enumerate(names) if value != -1]
    summary = [names[index] for index in summary_offsets]

    if name + 1 == len(summary):
        summary_sa = [-1] * (len(summary) + 1)
        summary_sa[0] = len(summary)
        for x, y in enumerate(summary):
            summary_sa[y + 1] = x
    else:
        summary_sa = _induced_sort(summary, name + 1)

    sa = [-1] * (len(string) + 1)
    tails = _bucket_tails(sizes)
    for i in range(len(summary_sa) - 1, 1, -1):
        index = summary_offsets[summary_sa[i]]
        sa[tails[string[index]]] = index
        tails[string[index]] -= 1
    sa[0] = len(string)

    _induce_l(string, sa, sizes, types)
    _induce_s(string, sa, sizes, types)
    return sa


def suffix_array(string) -> np.ndarray:
    """Suffix array of a finite string by induced sorting. The end of the string acts as a sentinel smaller than
    every symbol, so a suffix that is a prefix of another one sorts first

    Args:
        string: uint8 array or bytes

    Returns:
        np.ndarray: int64 start offsets in increasing suffix order
    """
    symbols = [int(symbol) for symbol in string]

    if not symbols:
        return np.zeros(0, dtype=np.int64)

    return np.array(_induced_sort(symbols, 256)[1:], dtype=np.int64)


def lcp_array(string, sa: np.ndarray) -> np.ndarray:
    """Kasai's linear time LCP construction. lcp[k] is the longest common prefix of the suffixes at sa[k-1] and
    sa[k], and lcp[0] = 0

    Args:
        string: uint8 array or bytes
        sa (np.ndarray): Its suffix array

    Returns:
        np.ndarray: int64 LCP values
    """
    symbols = [int(symbol) for symbol in string]
    m = len(symbols)
    rank = [0] * m
    for position, offset in enumerate(sa.tolist()):
        rank[offset] = position

    lcp = [0] * m
    h = 0
    order = sa.tolist()

    for i in range(m):
        if rank[i] > 0:
            j = order[rank[i] - 1]
            while i + h < m and j + h < m and symbols[i + h] == symbols[j + h]:
                h += 1
            lcp[rank[i]] = h
            if h > 0:
                h -= 1
        else:
            h = 0

    return np.array(lcp, dtype=np.int64)
