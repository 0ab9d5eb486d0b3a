import numpy as np
import pytest

from itersig.words import ExtendedLetter, Word


def random_word(rng, d, max_weight, max_length=3, allow_negative=False):
    """A random word of bounded weight, uniform-ish over small shapes."""
    while True:
        p = int(rng.integers(1, max_length + 1))
        letters = []
        for _ in range(p):
            ndims = int(rng.integers(1, d + 1))
            dims = np.sort(rng.choice(np.arange(1, d + 1), size=ndims, replace=False))
            pairs = []
            for dim in dims:
                exp = int(rng.integers(1, 3))
                if allow_negative and rng.random() < 0.4:
                    exp = -exp
                pairs.append((int(dim), exp))
            letters.append(ExtendedLetter(tuple(pairs)))
        word = Word(tuple(letters))
        if word.weight <= max_weight:
            return word


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
