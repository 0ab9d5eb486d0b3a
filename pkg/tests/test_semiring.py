import numpy as np
import pytest

from itersig import semiring as sr
from itersig.errors import NegativeExponentError


def test_add_examples():
    assert sr.add(3, 5, sr.ARCTIC) == 5
    assert sr.add(sr.NEG_INF, 7, sr.ARCTIC) == 7
    assert sr.add(2.5, -1.5, sr.REAL) == 1.0


def test_mul_examples():
    assert sr.mul(3, 5, sr.ARCTIC) == 8
    assert sr.mul(sr.NEG_INF, 5, sr.ARCTIC) == sr.NEG_INF
    assert sr.mul(2, 0, sr.REAL) == 0


def test_power_examples():
    assert sr.power(2, 3, sr.REAL) == 8
    assert sr.power(4, -1, sr.ARCTIC) == -4
    assert sr.power(1.5, 2, sr.ARCTIC) == 3.0


def test_power_rejects_zero_and_real_negative():
    with pytest.raises(ValueError):
        sr.power(2, 0, sr.REAL)
    with pytest.raises(NegativeExponentError):
        sr.power(2, -1, sr.REAL)


def test_unknown_semiring_rejected():
    with pytest.raises(ValueError):
        sr.check_semiring("tropical")


@pytest.mark.parametrize("semiring", sr.SEMIRINGS)
def test_associativity_commutativity(semiring, rng):
    a, b, c = rng.uniform(-10, 10, size=(3, 1000))
    for op in (sr.add, sr.mul):
        left = op(op(a, b, semiring), c, semiring)
        right = op(a, op(b, c, semiring), semiring)
        if semiring == sr.ARCTIC:
            assert np.array_equal(left, right)
            assert np.array_equal(op(a, b, semiring), op(b, a, semiring))
        else:
            assert np.allclose(left, right, rtol=1e-12)
            assert np.allclose(op(a, b, semiring), op(b, a, semiring), rtol=1e-12)


@pytest.mark.parametrize("semiring", sr.SEMIRINGS)
def test_identities_and_annihilation(semiring, rng):
    a = rng.uniform(-10, 10, size=1000)
    zero = sr.zero(semiring)
    one = sr.one(semiring)
    assert np.array_equal(sr.add(zero, a, semiring), a)
    assert np.array_equal(sr.mul(one, a, semiring), a)
    annihilated = sr.mul(zero, a, semiring)
    assert np.all(annihilated == zero)


def test_power_additivity_positive_exponents(rng):
    a = rng.uniform(0.1, 3.0, size=200)
    for semiring in sr.SEMIRINGS:
        for m, n in [(1, 1), (2, 3), (1, 4)]:
            combined = sr.power(a, m + n, semiring)
            split = sr.mul(sr.power(a, m, semiring), sr.power(a, n, semiring), semiring)
            assert np.allclose(combined, split, rtol=1e-12)


def test_power_additivity_signed_arctic(rng):
    a = rng.uniform(-5, 5, size=200)
    for m, n in [(-2, 3), (4, -1), (-3, -2)]:
        combined = sr.power(a, m + n, sr.ARCTIC)
        split = sr.mul(sr.power(a, m, sr.ARCTIC), sr.power(a, n, sr.ARCTIC), sr.ARCTIC)
        assert np.allclose(combined, split, rtol=1e-12)


def test_cumulative_examples():
    assert np.array_equal(sr.cumulative([1, 2, 3], 0, sr.REAL), [1, 3, 6])
    assert np.array_equal(sr.cumulative([1, 2, 3], 1, sr.REAL), [0, 1, 3])
    assert np.array_equal(sr.cumulative([1, 3, 2], 0, sr.ARCTIC), [1, 3, 3])
    shifted = sr.cumulative([1.0, 3.0], 1, sr.ARCTIC)
    assert shifted[0] == sr.NEG_INF and shifted[1] == 1.0


def test_bottom_arithmetic_produces_no_nan():
    bottom = sr.zero(sr.ARCTIC)
    values = np.array([bottom, -3.0, 7.0])
    assert not np.any(np.isnan(sr.add(values, bottom, sr.ARCTIC)))
    assert not np.any(np.isnan(sr.mul(values, bottom, sr.ARCTIC)))
