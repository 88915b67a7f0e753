import itertools
import numpy as np
import pytest
from nano_bwt.mergetree import RunConfig


def binary_texts(max_length: int, min_length: int = 1):
    for length in range(min_length, max_length + 1):
        for symbols in itertools.product(b"ab", repeat=length):
            yield bytes(symbols)


def random_text(rng: np.random.Generator, n: int, sigma: int) -> bytes:
    return rng.integers(ord("a"), ord("a") + sigma, n, dtype=np.uint8).tobytes()


def fibonacci_text(n: int) -> bytes:
    previous, current = b"b", b"a"
    while len(current) < n:
        previous, current = current, current + previous
    return current[:n]


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240917)


@pytest.fixture
def banana() -> bytes:
    return b"banana"


@pytest.fixture
def config_factory(tmp_path):
    def factory(**kwargs) -> RunConfig:
        kwargs.setdefault("temp_dir", str(tmp_path / "work"))
        return RunConfig(**kwargs)

    return factory
