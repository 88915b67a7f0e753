from nano_bwt.succinct.AppendBitVector import AppendBitVector
from nano_bwt.succinct.BitStream import BitWriter, BitReader
from nano_bwt.succinct.GammaCode import GammaStream, gamma_encode, gamma_decode, gamma_length
from nano_bwt.succinct.HuffmanCode import HuffmanCode, build_huffman
from nano_bwt.succinct.WaveletTree import WaveletTree, build_wavelet, node_bit_arrays, code_bit_tables, symbol_counts_of
