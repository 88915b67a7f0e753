import logging
import os
import tempfile
from itertools import repeat
from math import ceil
import numpy as np
from nano_bwt.errors import CorruptFileError
from nano_bwt.succinct import BitReader, BitWriter, HuffmanCode, build_huffman
from nano_bwt.extio.Container import BWT_KIND, header_size, map_file, read_header, reserve_header, write_header

logger = logging.getLogger(__name__)

DEFAULT_BWT_BLOCK = 4096
RUN_RECORD = np.dtype([("symbol", "u1"), ("length", "<u4")])
SPOOL_RUNS = 1 << 16


class BwtWriter:
    """Streams symbols into a BwtFile.\n
    Runs never cross a multiple of d, so every d-block starts with a fresh run. The Huffman code for the run symbols is
    only known once everything was seen, so runs are spooled to a temporary file as (symbol, length) records and encoded
    in a second pass on close().
    """

    def __init__(self, path: str, d: int = DEFAULT_BWT_BLOCK, stats=None, stream: str = "bwt") -> None:
        """Initializer for the BwtWriter

        Args:
            path (str): Output path
            d (int, optional): Restart block size. Defaults to 4096.
            stats (IoStats, optional): I/O counters. Defaults to None.
            stream (str, optional): Stream class the bytes are counted under. Defaults to "bwt".
        """
        if d < 1:
            raise ValueError(f"block size d must be positive, got {d}")

        self.path: str = path
        self.d: int = d
        self.stats = stats
        self.stream: str = stream
        self.m: int = 0
        self.run_count: int = 0
        self._histogram: np.ndarray = np.zeros(256, dtype=np.int64)
        self._spool = tempfile.TemporaryFile(dir=os.path.dirname(os.path.abspath(path)))
        self._run_symbol: int = 0
        self._run_length: int = 0

    def write(self, symbols) -> None:
        """Appends symbols (bytes or an uint8 array)
        """
        if isinstance(symbols, (bytes, bytearray)):
            symbols = np.frombuffer(symbols, dtype=np.uint8)
        symbols = np.asarray(symbols, dtype=np.uint8)
        count = len(symbols)

        if count == 0:
            return

        breaks = np.ones(count, dtype=bool)
        breaks[1:] = symbols[1:] != symbols[:-1]
        breaks |= (np.arange(self.m, self.m + count) % self.d) == 0
        starts = np.flatnonzero(breaks)
        lengths = np.diff(np.append(starts, count))
        run_symbols = symbols[starts]

        if self._run_length and self.m % self.d and run_symbols[0] == self._run_symbol:
            lengths[0] += self._run_length
        elif self._run_length:
            self._spool_runs(np.array([self._run_symbol], dtype=np.uint8), np.array([self._run_length]))

        self._spool_runs(run_symbols[:-1], lengths[:-1])
        self._run_symbol, self._run_length = int(run_symbols[-1]), int(lengths[-1])
        self.m += count

    def _spool_runs(self, symbols: np.ndarray, lengths: np.ndarray) -> None:
        if not len(symbols):
            return

        records = np.empty(len(symbols), dtype=RUN_RECORD)
        records["symbol"] = symbols
        records["length"] = lengths
        self._spool.write(records.tobytes())
        self._histogram += np.bincount(symbols, minlength=256)
        self.run_count += len(symbols)

    def _spooled(self):
        self._spool.seek(0)

        while True:
            chunk = self._spool.read(SPOOL_RUNS * RUN_RECORD.itemsize)
            if not chunk:
                return
            yield np.frombuffer(chunk, dtype=RUN_RECORD)

    def close(self) -> "BwtFile":
        """Encodes the spooled runs and writes the file

        Returns:
            BwtFile: Reader over the written file
        """
        if self._run_length:
            self._spool_runs(np.array([self._run_symbol], dtype=np.uint8), np.array([self._run_length]))
            self._run_length = 0

        code = build_huffman(dict(enumerate(self._histogram.tolist()))) if self.m else None
        codewords = {symbol: (int(word, 2), len(word)) for symbol, word in code.codewords.items()} if code else {}
        offsets = []

        with open(self.path, "wb") as f:
            reserve_header(f, BWT_KIND)
            writer = BitWriter(f)
            position = 0

            for records in self._spooled():
                for symbol, length in zip(records["symbol"].tolist(), records["length"].tolist()):
                    if position % self.d == 0:
                        offsets.append(writer.bit_length)
                    value, width = codewords[symbol]
                    writer.write_bits(value, width)
                    writer.write_gamma(length)
                    position += length

            writer.finish()
            table_offset = f.tell()

            if code is not None:
                f.write(bytes(value for symbol, length in code.code_lengths.items() for value in (symbol, length)))
            f.write(np.asarray(offsets, dtype="<u8").tobytes())

            write_header(f, BWT_KIND, m=self.m, d=self.d, code_count=len(codewords), block_count=len(offsets),
                         run_count=self.run_count, payload_bits=writer.bit_length, table_offset=table_offset)
            size = f.seek(0, os.SEEK_END)

        self._spool.close()

        if self.stats is not None:
            self.stats.add_written(self.stream, size)

        logger.debug("wrote %d symbols in %d runs to %s (%d bytes)", self.m, self.run_count, self.path, size)
        return BwtFile(self.path, self.stats, self.stream)


class BwtFile:
    """Reader of a run length, Huffman and γ coded BWT. Any number of decoders can be opened on one file, each starting at
    a multiple of d.
    """

    kind = BWT_KIND

    def __init__(self, path: str, stats=None, stream: str = "bwt") -> None:
        """Initializer for the BwtFile

        Args:
            path (str): File to open
            stats (IoStats, optional): I/O counters. Defaults to None.
            stream (str, optional): Stream class the bytes are counted under. Defaults to "bwt".

        Raises:
            CorruptFileError: If the header or the tables are malformed
        """
        self.path: str = path
        self.stats = stats
        self.stream: str = stream
        self._map = map_file(path)
        header = read_header(self._map, BWT_KIND)
        self.m: int = header["m"]
        self.d: int = header["d"]
        self.run_count: int = header["run_count"]
        self.payload_bits: int = header["payload_bits"]
        code_count, block_count, table_offset = header["code_count"], header["block_count"], header["table_offset"]

        if table_offset + 2 * code_count + 8 * block_count > len(self._map) or self.d < 1:
            raise CorruptFileError(f"{path} is truncated")
        if block_count != ceil(self.m / self.d):
            raise CorruptFileError(f"{path} has {block_count} block offsets for {self.m} symbols")

        table = self._map[table_offset:table_offset + 2 * code_count]

        try:
            self.code: HuffmanCode = HuffmanCode(dict(zip(table[0::2], table[1::2]))) if code_count else None
        except ValueError as e:
            raise CorruptFileError(f"{path} has an invalid code table: {e}") from e

        offsets_start = table_offset + 2 * code_count
        self.block_offsets: np.ndarray = np.frombuffer(self._map[offsets_start:offsets_start + 8 * block_count], dtype="<u8").astype(np.int64)

        if block_count and (self.block_offsets[0] != 0 or np.any(np.diff(self.block_offsets) <= 0)
                            or self.block_offsets[-1] >= self.payload_bits):
            raise CorruptFileError(f"{path} has an inconsistent block offset table")

        self._base: int = 8 * header_size(BWT_KIND)

    def __len__(self) -> int:
        return self.m

    def __repr__(self) -> str:
        return f"BwtFile({self.path!r}, m={self.m}, d={self.d})"

    def __enter__(self) -> "BwtFile":
        return self

    def __exit__(self, *exc) -> None:
        self.close()

    def close(self) -> None:
        if not self._map.closed:
            self._map.close()

    def discard(self) -> None:
        self.close()
        if os.path.exists(self.path):
            os.remove(self.path)

    def iter_runs(self, start: int = 0):
        """Decodes (symbol, length) runs from position `start` on

        Args:
            start (int, optional): Multiple of d below m. Defaults to 0.

        Raises:
            ValueError: If start isn't a restart point
            CorruptFileError: If the payload doesn't decode to runs that fit the blocks

        Yields:
            tuple[int, int]: Runs in order; runs never cross a multiple of d
        """
        if start == self.m:
            return
        if start < 0 or start > self.m or start % self.d:
            raise ValueError(f"can only start decoding at a multiple of {self.d} below {self.m}, got {start}")

        first = self._base + int(self.block_offsets[start // self.d])
        reader = BitReader(self._map, first, self._base + self.payload_bits)
        position = start

        try:
            while position < self.m:
                try:
                    symbol = self.code.decode_symbol(reader)
                    length = reader.read_gamma()
                except (EOFError, ValueError) as e:
                    raise CorruptFileError(f"{self.path} has an undecodable run at symbol {position}: {e}") from e

                if length > min(self.d - position % self.d, self.m - position):
                    raise CorruptFileError(f"{self.path} has a run of {length} crossing a block end at symbol {position}")

                position += length
                yield symbol, length
        finally:
            if self.stats is not None:
                self.stats.add_read(self.stream, (reader.position - first + 7) // 8)

    def open_at(self, start: int = 0):
        """Sequential decoder yielding one symbol at a time from a restart point
        """
        for symbol, length in self.iter_runs(start):
            yield from repeat(symbol, length)

    def read_range(self, start: int, stop: int) -> np.ndarray:
        """Symbols [start, stop), decoded from the closest restart point at or before start
        """
        start, stop = max(0, start), min(stop, self.m)

        if start >= stop:
            return np.zeros(0, dtype=np.uint8)

        origin = start - start % self.d
        symbols, lengths, covered = [], [], origin

        for symbol, length in self.iter_runs(origin):
            symbols.append(symbol)
            lengths.append(length)
            covered += length
            if covered >= stop:
                break

        decoded = np.repeat(np.asarray(symbols, dtype=np.uint8), lengths)
        return decoded[start - origin:stop - origin]

    def read_all(self) -> np.ndarray:
        return self.read_range(0, self.m)

    def describe(self) -> dict:
        return {
            "kind": "bwt",
            "path": self.path,
            "symbols": self.m,
            "block_size": self.d,
            "blocks": len(self.block_offsets),
            "runs": self.run_count,
            "code_symbols": len(self.code) if self.code else 0,
            "payload_bits": self.payload_bits,
            "bits_per_symbol": round(self.payload_bits / self.m, 4) if self.m else 0.0,
        }


def write_bwt(path: str, symbols, d: int = DEFAULT_BWT_BLOCK, stats=None) -> BwtFile:
    writer = BwtWriter(path, d, stats)
    writer.write(symbols)
    return writer.close()


def copy_bwt(source, path: str, d: int = DEFAULT_BWT_BLOCK, stats=None, chunk: int = 1 << 20) -> BwtFile:
    """Re-encodes any BWT source with read_range() (a BwtFile or a MultiPartBwt) into a single file
    """
    writer = BwtWriter(path, d, stats)

    for start in range(0, len(source), chunk):
        writer.write(source.read_range(start, start + chunk))

    return writer.close()
