"""Iterated sums of time series over semirings.

The central object is :func:`iss`, which evaluates one word's iterated
sum for a whole series in ``O(T * p)`` time by alternating letter
evaluation, entrywise semiring products, and shifted cumulative sums.
:func:`iss_brute` enumerates index tuples directly and serves as the
independent test oracle; it shares no code path with the fast version
beyond letter evaluation.

Supported variants:

* strict (``t_1 < ... < t_p``) and non-strict (``t_1 <= ... <= t_p``)
  index modes,
* exponential gap weighting over both semirings (multiplicative over the
  reals, additive in the arctic semiring),
* cosine gap weighting over the reals in strict mode, expanded per gap
  into separable trigonometric terms.

Series are ``(d, T)`` arrays (or ``(T,)`` for univariate input);
stacking samples of equal length into ``(n, d, T)`` batches evaluates
all of them at once.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import semiring as sr
from .errors import (
    ConfigError,
    DimensionOutOfRangeError,
    OracleSizeError,
)
from .words import ExtendedLetter, Word

STRICT = "strict"
NONSTRICT = "nonstrict"
MODES = (STRICT, NONSTRICT)

H_KINDS = ("id", "l1", "l2")
MAX_SCALE = 300.0  # keeps exp(scale) comfortably inside double range

ORACLE_MAX_LENGTH = 6
ORACLE_MAX_T = 64


@dataclass(frozen=True)
class ExponentialWeighting:
    """Exponential penalty on the time range covered by an index tuple.

    The gap coefficients are fixed to 1 except for the outermost one,
    which is 1 when ``include_outer`` is set and 0 otherwise.  The
    control curve is ``g(t) = scale * h(t)`` with ``h`` one of
    ``"id"`` (``t/T``), ``"l1"`` (normalized cumulative absolute
    increments) or ``"l2"`` (squared increments).
    """

    h_kind: str = "id"
    scale: float = 50.0
    include_outer: bool = False

    def validate(self):
        if self.h_kind not in H_KINDS:
            raise ConfigError(f"unknown h kind {self.h_kind!r}, expected one of {H_KINDS}")
        if not 0.0 < self.scale <= MAX_SCALE:
            raise ConfigError(f"scale must be in (0, {MAX_SCALE:g}], got {self.scale!r}")

    def describe(self) -> str:
        return f"exp:{self.h_kind}:{self.scale:g}:{int(self.include_outer)}"


@dataclass(frozen=True)
class CosineWeighting:
    """Cosine gap weighting ``cos(pi/(f*T) * gap)**b`` on the reals."""

    b: int = 1
    f: float = 0.5

    def validate(self):
        if not isinstance(self.b, int) or self.b < 1:
            raise ConfigError(f"b must be a positive integer, got {self.b!r}")
        if not 0.0 < self.f <= 1.0:
            raise ConfigError(f"f must be in (0, 1], got {self.f!r}")

    def describe(self) -> str:
        return f"cos:{self.b}:{self.f:g}"


def describe_weighting(weighting) -> str:
    return "none" if weighting is None else weighting.describe()


@dataclass(frozen=True)
class IssSpec:
    """One fully determined iterated-sum transform."""

    word: Word
    semiring: str = sr.REAL
    mode: str = STRICT
    weighting: ExponentialWeighting | CosineWeighting | None = None

    def validate(self):
        sr.check_semiring(self.semiring)
        if self.mode not in MODES:
            raise ConfigError(f"unknown mode {self.mode!r}, expected one of {MODES}")
        if self.semiring == sr.REAL and self.word.has_negative:
            raise ConfigError(
                f"word {self.word} has negative exponents, which need the arctic semiring"
            )
        w = self.weighting
        if isinstance(w, ExponentialWeighting):
            w.validate()
            if self.semiring == sr.REAL and self.mode == NONSTRICT:
                raise ConfigError(
                    "exponential weighting over the reals is only defined in strict mode"
                )
        elif isinstance(w, CosineWeighting):
            w.validate()
            if self.semiring != sr.REAL or self.mode != STRICT:
                raise ConfigError("cosine weighting needs the real semiring in strict mode")
        elif w is not None:
            raise ConfigError(f"unknown weighting {w!r}")
        return self


def _as_batch(x):
    """Normalize input to ``(n, d, T)``; report whether it was a single series."""
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim == 1:
        return arr[None, None, :], True
    if arr.ndim == 2:
        return arr[None, :, :], True
    if arr.ndim == 3:
        return arr, False
    raise ValueError(f"expected a (T,), (d, T) or (n, d, T) array, got shape {arr.shape}")


def _letter_series(x, letter: ExtendedLetter, semiring, cache=None):
    """Evaluate one letter on every time step: ``(n, d, T) -> (n, T)``."""
    if cache is not None:
        key = (letter.factors, semiring)
        hit = cache.get(key)
        if hit is not None:
            return hit
    if letter.max_dim > x.shape[-2]:
        raise DimensionOutOfRangeError(
            f"letter {letter} needs dimension {letter.max_dim}, series has {x.shape[-2]}"
        )
    out = None
    for dim, exp in letter.factors:
        term = sr.power(x[..., dim - 1, :], exp, semiring)
        out = term if out is None else sr.mul(out, term, semiring)
    if cache is not None:
        cache[key] = out
    return out


def letter_eval(x, letter: ExtendedLetter, semiring) -> np.ndarray:
    """Semiring product of the letter's factors at every time step.

    Over the reals this is the monomial ``x_t^[a]``; in the arctic
    semiring each factor contributes ``exponent * x_t`` additively.
    """
    batch, single = _as_batch(x)
    out = _letter_series(batch, letter, semiring)
    return out[0] if single else out


def _dp(levels, mode, semiring):
    """Fold letter-level series into the iterated sum via shifted cumsums."""
    shift = 1 if mode == STRICT else 0
    acc = levels[0]
    for level in levels[1:]:
        acc = sr.mul(level, sr.cumulative(acc, shift, semiring), semiring)
    return sr.cumulative(acc, 0, semiring)


def h_curve(kind, x) -> np.ndarray:
    """Values of the weighting control ``h(t)`` for ``t = 1..T``.

    ``(n, d, T)`` input gives ``(n, T)`` output; multidimensional series
    aggregate increments by summing per-dimension magnitudes.  Constant
    series (zero total increment mass) fall back to ``t/T``.
    """
    x = np.asarray(x, dtype=np.float64)
    T = x.shape[-1]
    ramp = np.arange(1, T + 1, dtype=np.float64) / T
    if kind == "id":
        return np.broadcast_to(ramp, x.shape[:-2] + (T,)).copy()
    if kind not in H_KINDS:
        raise ConfigError(f"unknown h kind {kind!r}")
    delta = np.zeros_like(x)
    delta[..., 1:] = np.diff(x, axis=-1)
    mag = np.abs(delta) if kind == "l1" else np.square(delta)
    mass = np.cumsum(mag.sum(axis=-2), axis=-1)
    total = mass[..., -1:]
    with np.errstate(invalid="ignore", divide="ignore"):
        h = mass / total
    degenerate = total[..., 0] == 0.0
    if np.any(degenerate):
        h[degenerate] = ramp
    return h


def h_eval(kind, t, x) -> float:
    """``h(t)`` for a single series; thin wrapper around :func:`h_curve`."""
    series, _ = _as_batch(x)
    return float(h_curve(kind, series)[0, t - 1])


def _alpha_deltas(p, include_outer):
    """Per-level exponent increments for the fixed gap coefficients."""
    alpha_p = 1.0 if include_outer else 0.0
    alphas = [1.0] * (p - 1) + [alpha_p]
    deltas = [alphas[0]] + [alphas[k] - alphas[k - 1] for k in range(1, p)]
    return deltas, alpha_p


def _iss_exponential(x, spec, h_ref, cache):
    w = spec.weighting
    href, _ = _as_batch(x if h_ref is None else h_ref)
    if href.shape[0] != x.shape[0] or href.shape[-1] != x.shape[-1]:
        raise ValueError("h reference series must match the batch and length of x")
    g = w.scale * h_curve(w.h_kind, href)
    p = spec.word.length
    deltas, alpha_p = _alpha_deltas(p, w.include_outer)
    real = spec.semiring == sr.REAL
    levels = []
    for k, letter in enumerate(spec.word.letters):
        base = _letter_series(x, letter, spec.semiring, cache)
        d = deltas[k]
        if d == 0.0:
            levels.append(base)
        elif real:
            levels.append(base * np.exp(d * g))
        else:
            levels.append(base + d * g)
    out = _dp(levels, spec.mode, spec.semiring)
    if alpha_p:
        out = out * np.exp(-alpha_p * g) if real else out - alpha_p * g
    return out


def _iss_cosine(x, spec, cache):
    w = spec.weighting
    T = x.shape[-1]
    p = spec.word.length
    alpha = math.pi / (w.f * T)
    t = np.arange(1, T + 1, dtype=np.float64)
    cos_t, sin_t = np.cos(alpha * t), np.sin(alpha * t)
    phi = [cos_t ** (w.b - j) * sin_t**j for j in range(w.b + 1)]
    pair = [[phi[a] * phi[b] for b in range(w.b + 1)] for a in range(w.b + 1)]
    coeff = [math.comb(w.b, j) for j in range(w.b + 1)]
    base = [_letter_series(x, letter, sr.REAL, cache) for letter in spec.word.letters]
    out = np.zeros(x.shape[:-2] + (T,))
    for J in itertools.product(range(w.b + 1), repeat=p):
        c = 1.0
        for j in J:
            c *= coeff[j]
        levels = [base[0] * (c * phi[J[0]])]
        for k in range(1, p):
            levels.append(base[k] * pair[J[k - 1]][J[k]])
        out += _dp(levels, STRICT, sr.REAL) * phi[J[p - 1]]
    return out


def iss(x, spec: IssSpec, h_ref=None, cache=None) -> np.ndarray:
    """Iterated sum of ``x`` for ``spec``, one value per time step.

    Parameters
    ----------
    x : array of shape (T,), (d, T) or (n, d, T)
        Input series or an equally-long batch of series.
    spec : IssSpec
        Word, semiring, index mode, and weighting.
    h_ref : array, optional
        Series the exponential weighting control ``h`` is evaluated on.
        Defaults to ``x`` itself.  Pipelines pass the raw, unprepared
        sample here so the control curve is invariant to stuttering.
    cache : dict, optional
        Letter-series cache shared across calls on the same batch.

    Returns
    -------
    array of shape (T,) (or ``(n, T)`` for batched input)
        Entry ``t`` depends only on ``x[..., :t]``.
    """
    spec.validate()
    batch, single = _as_batch(x)
    w = spec.weighting
    if w is None:
        levels = [
            _letter_series(batch, letter, spec.semiring, cache) for letter in spec.word.letters
        ]
        out = _dp(levels, spec.mode, spec.semiring)
    elif isinstance(w, ExponentialWeighting):
        out = _iss_exponential(batch, spec, h_ref, cache)
    else:
        out = _iss_cosine(batch, spec, cache)
    if spec.semiring == sr.REAL:
        if not np.all(np.isfinite(out)):
            raise FloatingPointError(
                "iterated sum overflowed; reduce the weighting scale or standardize the input"
            )
    elif np.any(np.isnan(out)):
        raise FloatingPointError("arctic iterated sum produced NaN")
    return out[0] if single else out


def _oracle_weights_log(idx, g):
    """Sum of unit-coefficient gap terms ``g(t_k) - g(t_{k+1})`` per tuple."""
    total = np.zeros(idx.shape[0])
    for k in range(idx.shape[1] - 1):
        total += g[idx[:, k]] - g[idx[:, k + 1]]
    return total


def iss_brute(x, spec: IssSpec, h_ref=None) -> np.ndarray:
    """Direct enumeration of all index tuples; the test oracle.

    Deliberately naive: ``O(T^p)`` tuples, evaluated tuple by tuple,
    with the weight recomputed from its definition for every tuple.
    Guarded to ``p <= 6`` and ``T <= 64``.
    """
    spec.validate()
    batch, single = _as_batch(x)
    if not single:
        raise ValueError("the oracle evaluates one series at a time")
    series = batch[0]
    T = series.shape[-1]
    p = spec.word.length
    if p > ORACLE_MAX_LENGTH or T > ORACLE_MAX_T:
        raise OracleSizeError(
            f"brute force limited to words of length {ORACLE_MAX_LENGTH} "
            f"and series of length {ORACLE_MAX_T}"
        )
    values = np.stack(
        [_letter_series(batch, letter, spec.semiring)[0] for letter in spec.word.letters]
    )
    combos = (
        itertools.combinations(range(T), p)
        if spec.mode == STRICT
        else itertools.combinations_with_replacement(range(T), p)
    )
    idx = np.array(list(combos), dtype=np.intp).reshape(-1, p)
    if spec.semiring == sr.REAL:
        core = np.ones(idx.shape[0])
        for k in range(p):
            core = core * values[k, idx[:, k]]
    else:
        core = np.zeros(idx.shape[0])
        for k in range(p):
            core = core + values[k, idx[:, k]]

    w = spec.weighting
    outer_log = None
    if isinstance(w, ExponentialWeighting):
        href, _ = _as_batch(series if h_ref is None else h_ref)
        g = w.scale * h_curve(w.h_kind, href)[0]
        inner = _oracle_weights_log(idx, g)
        if spec.semiring == sr.REAL:
            core = core * np.exp(inner)
        else:
            core = core + inner
        if w.include_outer:
            outer_log = g[idx[:, p - 1]], g  # per-tuple g(t_p) and full curve
    elif isinstance(w, CosineWeighting):
        alpha = math.pi / (w.f * T)
        for k in range(p - 1):
            core = core * np.cos(alpha * (idx[:, k] - idx[:, k + 1])) ** w.b
        outer_log = None  # cosine outer factor handled per t below

    out = np.empty(T)
    last = idx[:, p - 1]
    for t in range(T):
        mask = last <= t
        if not np.any(mask):
            out[t] = sr.zero(spec.semiring)
            continue
        contrib = core[mask]
        if isinstance(w, CosineWeighting):
            alpha = math.pi / (w.f * T)
            contrib = contrib * np.cos(alpha * (last[mask] - t)) ** w.b
        elif outer_log is not None:
            g_tp, g = outer_log
            gap = g_tp[mask] - g[t]
            contrib = contrib * np.exp(gap) if spec.semiring == sr.REAL else contrib + gap
        out[t] = contrib.sum() if spec.semiring == sr.REAL else contrib.max()
    return out
