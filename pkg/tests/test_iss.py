import math

import numpy as np
import pytest

from itersig import semiring as sr
from itersig.errors import ConfigError, NegativeExponentError, OracleSizeError
from itersig.iss import (
    NONSTRICT,
    STRICT,
    CosineWeighting,
    ExponentialWeighting,
    IssSpec,
    h_eval,
    iss,
    iss_brute,
    letter_eval,
)
from itersig.prepare import increments
from itersig.words import parse_word
from conftest import random_word


def spec_of(text, d=1, semiring=sr.REAL, mode=STRICT, weighting=None):
    return IssSpec(parse_word(text, d), semiring, mode, weighting)


def real_close(a, b, rtol):
    scale = max(np.max(np.abs(b)), 1e-300)
    return np.allclose(a, b, rtol=rtol, atol=rtol * scale)


class TestLetterEval:
    def test_real_square(self):
        out = letter_eval(np.array([2.0, 3.0]), parse_word("[1^2]", 1).letters[0], sr.REAL)
        assert np.array_equal(out, [4.0, 9.0])

    def test_real_cross_dimension(self):
        x = np.array([[1.0, 2.0], [3.0, 4.0]])
        out = letter_eval(x, parse_word("[12]", 2).letters[0], sr.REAL)
        assert np.array_equal(out, [3.0, 8.0])

    def test_arctic_signed_multiple(self):
        out = letter_eval(np.array([5.0, -1.0]), parse_word("[1^(-1)]", 1).letters[0], sr.ARCTIC)
        assert np.array_equal(out, [-5.0, 1.0])


class TestIssBasics:
    def test_single_letter_prefix_sum(self):
        assert np.array_equal(iss(np.array([1.0, 2, 3]), spec_of("[1]")), [1, 3, 6])

    def test_squares_prefix_sum(self):
        assert np.array_equal(iss(np.array([1.0, 2, 3]), spec_of("[1^2]")), [1, 5, 14])

    def test_two_letter_strict(self):
        assert np.array_equal(iss(np.array([1.0, 2, 3]), spec_of("[1][1]")), [0, 2, 11])

    def test_arctic_nonstrict_alternating(self):
        x = np.array([1.0, 3, -4, 2, 0, 5, 1, 1])
        out = iss(x, spec_of("[1][1^(-1)][1]", semiring=sr.ARCTIC, mode=NONSTRICT))
        assert out[-1] == 12.0
        assert np.array_equal(out, [1, 3, 3, 9, 9, 12, 12, 12])

    def test_batch_matches_per_sample(self, rng):
        batch = rng.normal(size=(5, 2, 16))
        spec = spec_of("[1][22]", d=2)
        stacked = iss(batch, spec)
        for i in range(5):
            assert np.array_equal(stacked[i], iss(batch[i], spec))


class TestBruteOracle:
    def test_brute_examples(self):
        assert np.array_equal(iss_brute(np.array([1.0, 2, 3]), spec_of("[1][1]")), [0, 2, 11])
        x = np.array([1.0, 3, -4, 2])
        out = iss_brute(x, spec_of("[1][1^(-1)][1]", semiring=sr.ARCTIC, mode=NONSTRICT))
        assert out[-1] == 9.0

    def test_brute_cosine_example(self):
        # direct enumeration of the weighted sum; the fast path must agree
        spec = spec_of("[1][1]", weighting=CosineWeighting(b=1, f=1.0))
        x = np.ones(3)
        slow = iss_brute(x, spec)
        assert slow[-1] == pytest.approx(0.25, abs=1e-12)
        assert real_close(iss(x, spec), slow, 1e-10)

    def test_size_guard(self):
        with pytest.raises(OracleSizeError):
            iss_brute(np.zeros(65), spec_of("[1]"))
        with pytest.raises(OracleSizeError):
            iss_brute(np.zeros(8), spec_of("[1]" * 7))


class TestSpecValidation:
    def test_real_negative_exponent_rejected(self):
        with pytest.raises(NegativeExponentError):
            iss(np.zeros(4), spec_of("[1^(-1)]"))

    def test_real_nonstrict_exponential_rejected(self):
        spec = spec_of("[1]", mode=NONSTRICT, weighting=ExponentialWeighting())
        with pytest.raises(ConfigError):
            iss(np.zeros(4), spec)

    def test_cosine_needs_real_strict(self):
        with pytest.raises(ConfigError):
            iss(np.zeros(4), spec_of("[1]", semiring=sr.ARCTIC, weighting=CosineWeighting()))
        with pytest.raises(ConfigError):
            iss(np.zeros(4), spec_of("[1]", mode=NONSTRICT, weighting=CosineWeighting()))

    def test_scale_bounds(self):
        with pytest.raises(ConfigError):
            iss(np.zeros(4), spec_of("[1]", weighting=ExponentialWeighting(scale=301.0)))
        with pytest.raises(ConfigError):
            iss(np.zeros(4), spec_of("[1]", weighting=ExponentialWeighting(scale=0.0)))


class TestExponentialWeighting:
    def test_pair_weight_example(self):
        # g(t) = t via h=id with scale = T = 3
        spec = spec_of("[1][1]", weighting=ExponentialWeighting("id", 3.0, False))
        out = iss(np.ones(3), spec)
        assert out[-1] == pytest.approx(2 * math.exp(-1) + math.exp(-2), rel=1e-12)

    def test_single_letter_without_outer_is_unweighted(self, rng):
        x = rng.normal(size=12)
        weighted = iss(x, spec_of("[1]", weighting=ExponentialWeighting("l2", 50.0, False)))
        assert np.array_equal(weighted, iss(x, spec_of("[1]")))

    def test_l1_weight_example(self):
        spec = spec_of("[1][1]", weighting=ExponentialWeighting("l1", 50.0, False))
        out = iss(np.array([1.0, 2.0]), spec)
        assert out[-1] == pytest.approx(2 * math.exp(-50), rel=1e-12)

    def test_arctic_additive_examples(self):
        weighting = ExponentialWeighting("id", 2.0, False)  # g(t) = t for T = 2
        out = iss(np.zeros(2), spec_of("[1][1]", semiring=sr.ARCTIC, weighting=weighting))
        assert out[-1] == pytest.approx(-1.0, abs=1e-12)
        weighting = ExponentialWeighting("id", 3.0, False)  # g(t) = t for T = 3
        out = iss(np.array([5.0, 0, 0]), spec_of("[1][1]", semiring=sr.ARCTIC, weighting=weighting))
        assert out[-1] == pytest.approx(4.0, abs=1e-12)

    def test_include_outer_matches_oracle(self, rng):
        x = rng.uniform(-1, 1, size=10)
        for semiring in (sr.REAL, sr.ARCTIC):
            spec = spec_of("[1][1^2]", semiring=semiring,
                           weighting=ExponentialWeighting("l1", 50.0, True))
            if semiring == sr.ARCTIC:
                assert np.allclose(iss(x, spec), iss_brute(x, spec), atol=1e-12, rtol=0)
            else:
                assert real_close(iss(x, spec), iss_brute(x, spec), 1e-9)

    def test_large_scale_stays_finite(self, rng):
        x = rng.uniform(-1, 1, size=24)
        spec = spec_of("[1][1]", weighting=ExponentialWeighting("id", 300.0, False))
        assert np.all(np.isfinite(iss(x, spec)))


class TestCosineWeighting:
    def test_pair_expansion_component_count(self):
        # p = 2, b = 1 expands into exactly 4 plain sums
        assert (1 + 1) ** 2 == 4

    def test_single_letter_direct(self):
        x = np.ones(4)
        spec = spec_of("[1]", weighting=CosineWeighting(b=1, f=0.5))
        alpha = math.pi / (0.5 * 4)
        direct = [
            sum(math.cos(alpha * (t1 - t)) for t1 in range(1, t + 1)) for t in range(1, 5)
        ]
        assert np.allclose(iss(x, spec), direct, atol=1e-10)

    def test_pair_example_fast_equals_oracle(self):
        spec = spec_of("[1][1]", weighting=CosineWeighting(b=1, f=1.0))
        x = np.ones(3)
        assert iss(x, spec)[-1] == pytest.approx(0.25, abs=1e-12)


class TestHEval:
    def test_id(self):
        assert h_eval("id", 2, np.zeros(4)) == pytest.approx(0.5)

    def test_l1_example(self):
        assert h_eval("l1", 3, np.array([0.0, 1, 1, 3])) == pytest.approx(1 / 3)

    def test_constant_fallback(self):
        assert h_eval("l1", 2, np.ones(4)) == pytest.approx(0.5)

    def test_curve_properties(self, rng):
        from itersig.iss import h_curve

        x = rng.normal(size=(1, 3, 20))
        for kind in ("id", "l1", "l2"):
            curve = h_curve(kind, x)[0]
            assert np.all(np.diff(curve) >= -1e-15)
            assert curve[-1] == pytest.approx(1.0)
            assert np.all((curve >= 0) & (curve <= 1 + 1e-15))


def _spec_combinations(word_pos, word_any):
    yield IssSpec(word_pos, sr.REAL, STRICT, None)
    yield IssSpec(word_pos, sr.REAL, NONSTRICT, None)
    yield IssSpec(word_any, sr.ARCTIC, STRICT, None)
    yield IssSpec(word_any, sr.ARCTIC, NONSTRICT, None)
    yield IssSpec(word_pos, sr.REAL, STRICT, ExponentialWeighting("id", 50.0, False))
    yield IssSpec(word_pos, sr.REAL, STRICT, ExponentialWeighting("l1", 50.0, True))
    yield IssSpec(word_any, sr.ARCTIC, STRICT, ExponentialWeighting("l2", 50.0, False))
    yield IssSpec(word_any, sr.ARCTIC, NONSTRICT, ExponentialWeighting("id", 50.0, True))
    yield IssSpec(word_pos, sr.REAL, STRICT, CosineWeighting(1, 0.25))
    yield IssSpec(word_pos, sr.REAL, STRICT, CosineWeighting(2, 0.45))


def test_oracle_equivalence_randomized(rng):
    checked = 0
    trial = 0
    while checked < 200:
        d = int(rng.integers(1, 4))
        T = int(rng.integers(1, 33))
        x = rng.uniform(-1, 1, size=(d, T))
        word_pos = random_word(rng, d, max_weight=4)
        word_any = random_word(rng, d, max_weight=4, allow_negative=True)
        specs = list(_spec_combinations(word_pos, word_any))
        spec = specs[trial % len(specs)]
        trial += 1
        fast = iss(x, spec)
        slow = iss_brute(x, spec)
        if spec.semiring == sr.ARCTIC:
            if spec.weighting is None:
                assert np.array_equal(fast, slow), str(spec)
            else:
                assert np.allclose(fast, slow, rtol=0, atol=1e-12), str(spec)
        elif isinstance(spec.weighting, CosineWeighting):
            assert real_close(fast, slow, 1e-8), str(spec)
        else:
            assert real_close(fast, slow, 1e-9), str(spec)
        checked += 1


def test_causality(rng):
    for _ in range(25):
        d = int(rng.integers(1, 3))
        T = int(rng.integers(2, 20))
        x = rng.uniform(-1, 1, size=(d, T))
        word = random_word(rng, d, max_weight=3, allow_negative=True)
        spec = IssSpec(word, sr.ARCTIC, NONSTRICT)
        full = iss(x, spec)
        for t in range(1, T + 1):
            assert np.array_equal(iss(x[:, :t], spec), full[:t])


def test_zero_insertion_invariance_real(rng):
    for _ in range(100):
        d = int(rng.integers(1, 3))
        T = int(rng.integers(2, 16))
        x = rng.uniform(-1, 1, size=(d, T))
        word = random_word(rng, d, max_weight=4)
        where = int(rng.integers(0, T + 1))
        inserted = np.insert(x, where, 0.0, axis=-1)
        a = iss(x, IssSpec(word))[-1]
        b = iss(inserted, IssSpec(word))[-1]
        assert a == pytest.approx(b, rel=1e-12, abs=1e-12)


def test_bottom_insertion_invariance_arctic(rng):
    for _ in range(100):
        d = int(rng.integers(1, 3))
        T = int(rng.integers(2, 16))
        x = rng.uniform(-1, 1, size=(d, T))
        word = random_word(rng, d, max_weight=4)  # positive exponents only
        where = int(rng.integers(0, T + 1))
        inserted = np.insert(x, where, sr.NEG_INF, axis=-1)
        for mode in (STRICT, NONSTRICT):
            spec = IssSpec(word, sr.ARCTIC, mode)
            assert iss(x, spec)[-1] == iss(inserted, spec)[-1]


def test_nonstrict_arctic_collapse(rng):
    lhs_spec = IssSpec(parse_word("[1][1^2][23]", 3), sr.ARCTIC, NONSTRICT)
    rhs_spec = IssSpec(parse_word("[1^3][23]", 3), sr.ARCTIC, NONSTRICT)
    for _ in range(100):
        x = rng.uniform(-1, 1, size=(3, int(rng.integers(1, 20))))
        assert np.array_equal(iss(x, lhs_spec), iss(x, rhs_spec))


def _stutter_positions(rng, x, count):
    out = x
    for _ in range(count):
        where = int(rng.integers(1, out.shape[-1] + 1))
        out = np.insert(out, where, out[..., where - 1], axis=-1)
    return out


def test_time_warping_invariance(rng):
    for _ in range(100):
        T = int(rng.integers(3, 16))
        x = rng.uniform(-1, 1, size=(1, T))
        stuttered = _stutter_positions(rng, x, int(rng.integers(1, 4)))
        word_any = random_word(rng, 1, max_weight=4, allow_negative=True)
        spec = IssSpec(word_any, sr.ARCTIC, NONSTRICT)
        assert iss(x, spec)[-1] == iss(stuttered, spec)[-1]

        word_pos = random_word(rng, 1, max_weight=4)
        a = iss(increments(x), IssSpec(word_pos))[-1]
        b = iss(increments(stuttered), IssSpec(word_pos))[-1]
        assert a == pytest.approx(b, rel=1e-10, abs=1e-12)

        weighting = ExponentialWeighting("l1", 50.0, False)
        wa = iss(increments(x), IssSpec(word_pos, weighting=weighting), h_ref=x)[-1]
        wb = iss(increments(stuttered), IssSpec(word_pos, weighting=weighting), h_ref=stuttered)[-1]
        assert wa == pytest.approx(wb, rel=1e-10, abs=1e-300)


def test_quasi_shuffle_square_identity(rng):
    single = IssSpec(parse_word("[1]", 1))
    square = IssSpec(parse_word("[1^2]", 1))
    pair = IssSpec(parse_word("[1][1]", 1))
    for _ in range(100):
        x = rng.uniform(-1, 1, size=int(rng.integers(1, 24)))
        lhs = iss(x, single) ** 2
        rhs = iss(x, square) + 2 * iss(x, pair)
        assert real_close(lhs, rhs, 1e-10)
