import numpy as np
import pytest
from nano_bwt.succinct import (AppendBitVector, BitWriter, BitReader, GammaStream, gamma_encode, gamma_decode,
                               gamma_length, HuffmanCode, build_huffman, build_wavelet, node_bit_arrays)


def reference_rank0(bits: np.ndarray) -> np.ndarray:
    return np.cumsum(1 - bits)


@pytest.mark.parametrize("length", [0, 1, 7, 64, 65, 500, 3000])
def test_bit_vector_rank_and_select(rng, length):
    bits = rng.integers(0, 2, length, dtype=np.uint8)
    vector = AppendBitVector(length)
    vector.extend(bits.tolist())

    assert len(vector) == length
    assert vector.ones == int(bits.sum())
    assert np.array_equal(vector.to_numpy(), bits)

    rank0 = reference_rank0(bits)
    for i in range(length):
        assert vector.rank0(i) == rank0[i]
        assert vector.rank1(i) == i + 1 - rank0[i]

    for k, position in enumerate(np.flatnonzero(bits)):
        assert vector.select1(k) == position


def test_bit_vector_from_bits_matches_appending(rng):
    bits = rng.integers(0, 2, 1000, dtype=np.uint8)
    appended = AppendBitVector(1000)
    appended.extend(bits.tolist())
    loaded = AppendBitVector.from_bits(bits)

    for i in range(0, 1000, 7):
        assert appended.rank0(i) == loaded.rank0(i)
    for k in range(0, int(bits.sum()), 5):
        assert appended.select1(k) == loaded.select1(k)


def test_bit_vector_grows_past_capacity(rng):
    bits = rng.integers(0, 2, 300, dtype=np.uint8)
    vector = AppendBitVector(8)
    vector.extend(bits.tolist())
    rank0 = reference_rank0(bits)

    assert vector.capacity >= 300
    assert all(vector.rank0(i) == rank0[i] for i in range(300))


def test_bit_vector_prefix_ranks():
    vector = AppendBitVector.from_bits([1, 0, 1, 1, 0])

    assert vector.rank1_prefix(0) == 0
    assert vector.rank1_prefix(5) == 3
    assert vector.rank0_prefix(2) == 1


def test_bit_vector_out_of_range_queries():
    vector = AppendBitVector.from_bits([1, 0, 1])

    with pytest.raises(IndexError):
        vector.rank0(3)
    with pytest.raises(IndexError):
        vector.rank1(-1)
    with pytest.raises(IndexError):
        vector.select1(2)


@pytest.mark.parametrize("z, codeword", [(1, "1"), (2, "010"), (3, "011"), (5, "00101"), (8, "0001000")])
def test_gamma_codewords(z, codeword):
    assert gamma_encode(z) == codeword
    assert gamma_length(z) == len(codeword)
    assert gamma_decode(codeword + "1") == (z, len(codeword))


def test_gamma_rejects_non_positive_and_truncated():
    with pytest.raises(ValueError):
        gamma_encode(0)
    with pytest.raises(ValueError):
        gamma_decode("0001")


def test_gamma_stream(rng):
    values = (rng.geometric(0.01, 2000)).tolist()
    stream = GammaStream.encode(values)

    assert len(stream) == 2000
    assert stream.bit_length == sum(gamma_length(v) for v in values)
    assert stream.decode() == values


def test_bit_writer_and_reader():
    writer = BitWriter()
    writer.write_bits(0b101, 3)
    writer.write_gamma(9)
    writer.write_bit(1)
    writer.write_bits(0xABCDE, 20)

    reader = BitReader(writer.getvalue(), limit=writer.bit_length)

    assert reader.read_bits(3) == 0b101
    assert reader.read_gamma() == 9
    assert reader.read_bit() == 1
    assert reader.read_bits(20) == 0xABCDE
    assert reader.at_end()
    with pytest.raises(EOFError):
        reader.read_bit()


def test_bit_writer_drains_into_a_file(tmp_path):
    path = tmp_path / "bits"

    with open(path, "wb") as f:
        writer = BitWriter(f)
        for z in range(1, 20000):
            writer.write_gamma(z)
        written = writer.finish()

    data = path.read_bytes()
    reader = BitReader(data)

    assert written == len(data)
    assert [reader.read_gamma() for _ in range(1, 20000)] == list(range(1, 20000))


def test_huffman_canonical_codewords():
    code = build_huffman({ord("a"): 5, ord("b"): 2, ord("c"): 1, ord("d"): 1})

    assert code.codewords == {ord("a"): "0", ord("b"): "10", ord("c"): "110", ord("d"): "111"}
    assert code.kraft_sum() == 1.0
    assert code == HuffmanCode(code.code_lengths)


def test_huffman_single_symbol_and_errors():
    assert build_huffman({7: 10, 8: 0}).codewords == {7: "0"}

    with pytest.raises(ValueError):
        build_huffman({1: 0})
    with pytest.raises(ValueError):
        HuffmanCode({})
    with pytest.raises(ValueError):
        HuffmanCode({1: 1, 2: 1, 3: 1})


def test_huffman_encode_decode(rng):
    symbols = rng.integers(0, 40, 3000)
    code = build_huffman(dict(zip(*np.unique(symbols, return_counts=True))))
    writer = BitWriter()

    for symbol in symbols:
        code.encode_symbol(writer, int(symbol))

    reader = BitReader(writer.getvalue(), limit=writer.bit_length)

    assert [code.decode_symbol(reader) for _ in symbols] == symbols.tolist()
    assert reader.at_end()


def test_huffman_decode_table():
    code = build_huffman({ord("a"): 5, ord("b"): 2, ord("c"): 1, ord("d"): 1})

    assert code.table_bits == 3
    assert code.decode_table == [(ord("a"), 1)] * 4 + [(ord("b"), 2)] * 2 + [(ord("c"), 3), (ord("d"), 3)]


def test_huffman_decodes_codewords_longer_than_the_table():
    fibonacci = [1, 1]
    while len(fibonacci) < 24:
        fibonacci.append(fibonacci[-1] + fibonacci[-2])
    code = build_huffman(dict(enumerate(fibonacci)))
    symbols = list(range(24)) * 3
    writer = BitWriter()

    for symbol in symbols:
        code.encode_symbol(writer, symbol)

    reader = BitReader(writer.getvalue(), limit=writer.bit_length)

    assert code.max_length > code.table_bits
    assert [code.decode_symbol(reader) for _ in symbols] == symbols
    assert reader.at_end()


def test_huffman_decode_errors():
    code = build_huffman({7: 3})
    writer = BitWriter()
    writer.write_bits(0b10, 2)

    with pytest.raises(ValueError):
        code.decode_symbol(BitReader(writer.getvalue(), limit=2))

    code = build_huffman({ord("a"): 5, ord("b"): 2, ord("c"): 1, ord("d"): 1})
    writer = BitWriter()
    writer.write_bits(0b11, 2)

    with pytest.raises(EOFError):
        code.decode_symbol(BitReader(writer.getvalue(), limit=2))


def test_bit_reader_peek_pads_past_the_limit():
    reader = BitReader(bytes([0b10110111]), limit=5)

    assert reader.peek_bits(4) == 0b1011
    assert reader.peek_bits(8) == 0b10110000
    reader.skip(3)
    assert reader.peek_bits(4) == 0b1000
    assert reader.position == 3

    with pytest.raises(EOFError):
        reader.skip(3)


@pytest.mark.parametrize("sigma", [1, 2, 5, 26, 200])
def test_wavelet_rank_matches_counting(rng, sigma):
    seq = rng.integers(0, sigma, 700, dtype=np.uint8)
    code = build_huffman(dict(zip(*np.unique(seq, return_counts=True))))
    tree = build_wavelet(seq, code)

    for a in np.unique(seq).tolist() + [255 if sigma < 255 else 0]:
        counts = np.concatenate(([0], np.cumsum(seq == a)))
        for r in range(0, 701, 13):
            assert tree.rank_prefix(a, r) == counts[r]

    assert tree.rank(int(seq[0]), 0) == 1
    with pytest.raises(IndexError):
        tree.rank(int(seq[0]), 700)


def test_wavelet_symbol_counts_and_missing_codewords():
    seq = np.frombuffer(b"nnbaaa", dtype=np.uint8)
    tree = build_wavelet(seq, build_huffman({ord("a"): 3, ord("b"): 1, ord("n"): 2}))

    assert tree.symbol_counts[ord("a")] == 0
    assert tree.symbol_counts[ord("b")] == 3
    assert tree.symbol_counts[ord("n")] == 4
    assert tree.rank_prefix(ord("n"), 2) == 2

    with pytest.raises(ValueError):
        build_wavelet(b"abc", build_huffman({ord("a"): 1}))


def test_node_bit_arrays_follow_codewords():
    code = HuffmanCode({0: 1, 1: 2, 2: 2})
    arrays = node_bit_arrays(np.array([0, 1, 2, 1, 0], dtype=np.uint8), code)

    assert arrays[""].tolist() == [0, 1, 1, 1, 0]
    assert arrays["1"].tolist() == [0, 1, 0]
