"""Scalar feature extraction from iterated-sum series.

A sieve maps the one-dimensional output ``z`` of an iterated sum to a
single number.  Config-file names:

* ``end``                       last value ``z_T``
* ``coq:<q>``                   ``z`` at the coquantile cut of the input
* ``npi:<k>``                   count of positive k-th order increments
* ``npi:<k>:<al>:<ar>``         the same count inside a quantile window
* ``mpi:<k>`` / ``mpi:<k>:<al>:<ar>``  windowed mean instead of count

Quantile windows ``(q_l, q_r]`` are fitted on training data by pooling
the k-th order increments of the target series across samples;
``alpha_r = 1`` pins ``q_r`` to infinity.  The plain forms use the fixed
window ``(0, inf]`` and need no fitting.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EmptyPoolError, ParseError

MAX_INC_ORDER = 3

PLAIN_WINDOW = (0.0, np.inf)


@dataclass(frozen=True)
class SieveSpec:
    """One sieve: kind plus its parameters."""

    kind: str                       # "end" | "coq" | "npi" | "mpi"
    k: int = 1                      # increment order for npi/mpi
    q: float = 0.5                  # coquantile level for coq
    alpha_l: float | None = None    # window quantile levels; None -> (0, inf]
    alpha_r: float | None = None

    def validate(self):
        if self.kind not in ("end", "coq", "npi", "mpi"):
            raise ParseError(f"unknown sieve kind {self.kind!r}")
        if self.kind == "coq" and not 0.0 <= self.q <= 1.0:
            raise ParseError(f"coquantile level must be in [0, 1], got {self.q!r}")
        if self.kind in ("npi", "mpi"):
            if not 0 <= self.k <= MAX_INC_ORDER:
                raise ParseError(f"increment order must be in 0..{MAX_INC_ORDER}, got {self.k!r}")
            if (self.alpha_l is None) != (self.alpha_r is None):
                raise ParseError("window quantiles must be given together")
            if self.alpha_l is not None and not 0.0 <= self.alpha_l < self.alpha_r <= 1.0:
                raise ParseError(
                    f"need 0 <= alpha_l < alpha_r <= 1, got ({self.alpha_l}, {self.alpha_r})"
                )
        return self

    @property
    def needs_fit(self) -> bool:
        return self.kind in ("npi", "mpi") and self.alpha_l is not None

    def __str__(self) -> str:
        if self.kind == "end":
            return "end"
        if self.kind == "coq":
            return f"coq:{self.q:g}"
        if self.alpha_l is None:
            return f"{self.kind}:{self.k}"
        return f"{self.kind}:{self.k}:{self.alpha_l:g}:{self.alpha_r:g}"


def parse_sieve(text: str) -> SieveSpec:
    parts = text.strip().split(":")
    kind = parts[0]
    try:
        if kind == "end" and len(parts) == 1:
            return SieveSpec("end").validate()
        if kind == "coq" and len(parts) == 2:
            return SieveSpec("coq", q=float(parts[1])).validate()
        if kind in ("npi", "mpi") and len(parts) == 2:
            return SieveSpec(kind, k=int(parts[1])).validate()
        if kind in ("npi", "mpi") and len(parts) == 4:
            return SieveSpec(
                kind, k=int(parts[1]), alpha_l=float(parts[2]), alpha_r=float(parts[3])
            ).validate()
    except ValueError as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"bad sieve text {text!r}: {exc}") from None
    raise ParseError(f"bad sieve text {text!r}")


def diff_k(z, k: int) -> np.ndarray:
    """k-th order increments along the last axis, first entry 0 each round."""
    out = np.asarray(z, dtype=np.float64)
    for _ in range(k):
        nxt = np.zeros_like(out)
        nxt[..., 1:] = np.diff(out, axis=-1)
        out = nxt
    return out


def sieve_end(z) -> float:
    return float(np.asarray(z)[-1])


def coquantile_index(x, q: float, norm: str = "l1") -> int:
    """Largest 1-based ``t`` whose cumulative increment mass ratio is at most ``q``.

    ``q = 0`` maps to 1 and ``q = 1`` to ``T``; constant input (zero
    total mass) also maps to ``T``.
    """
    x = np.atleast_2d(np.asarray(x, dtype=np.float64))
    T = x.shape[-1]
    if q <= 0.0:
        return 1
    if q >= 1.0:
        return T
    delta = np.zeros_like(x)
    delta[..., 1:] = np.diff(x, axis=-1)
    mag = np.abs(delta) if norm == "l1" else np.square(delta)
    mass = np.cumsum(mag.sum(axis=0))
    total = mass[-1]
    if total == 0.0:
        return T
    return int(np.nonzero(mass / total <= q)[0][-1] + 1)


def fit_window(pool, alpha_l: float, alpha_r: float) -> tuple[float, float]:
    """Empirical quantile window from pooled values, linear interpolation."""
    pool = np.asarray(pool, dtype=np.float64)
    pool = pool[np.isfinite(pool)]
    if pool.size == 0:
        raise EmptyPoolError("cannot fit a quantile window from an empty pool")
    q_l = float(np.quantile(pool, alpha_l))
    q_r = np.inf if alpha_r == 1.0 else float(np.quantile(pool, alpha_r))
    return q_l, q_r


def _window_mask(values, window):
    q_l, q_r = window
    finite = np.isfinite(values)
    masked = np.where(finite, values, q_l)
    return finite & (masked > q_l) & (masked <= q_r)


def _masked_sum(values, mask):
    # Sequential (left-associated) sum so that masked-out entries are
    # exactly transparent; keeps stuttered series bit-identical.
    return np.where(mask, values, 0.0).cumsum(axis=-1)[..., -1]


def batch_npi(diffs, window) -> np.ndarray:
    """Row-wise windowed increment counts for a ``(n, T)`` diff batch."""
    return _window_mask(diffs, window).sum(axis=-1).astype(np.float64)


def batch_mpi(diffs, window, denominator) -> np.ndarray:
    """Row-wise windowed increment means for a ``(n, T)`` diff batch."""
    mask = _window_mask(diffs, window)
    return _masked_sum(diffs, mask) / float(denominator)


def sieve_npi(z, k: int, window=PLAIN_WINDOW) -> float:
    """Count of k-th order increments inside the window ``(q_l, q_r]``."""
    return float(_window_mask(diff_k(z, k), window).sum())


def sieve_mpi(z, k: int, window=PLAIN_WINDOW, denominator=None) -> float:
    """Windowed mean of k-th order increments.

    The denominator defaults to the series length; pipelines with the
    fixed-length rule pass the length recorded at fit time instead.
    """
    values = diff_k(z, k)
    mask = _window_mask(values, window)
    denom = float(len(values) if denominator is None else denominator)
    return float(_masked_sum(values, mask) / denom)


def apply_sieve(spec: SieveSpec, z, window=None, denominator=None, x_ref=None) -> float:
    """Evaluate one sieve on an iterated-sum series.

    ``x_ref`` is the series the coquantile cut is computed on (the raw
    pipeline input); ``window`` is the fitted quantile window where the
    sieve requires one.
    """
    if spec.kind == "end":
        return sieve_end(z)
    if spec.kind == "coq":
        if x_ref is None:
            raise ValueError("coquantile sieve needs the reference input series")
        return float(np.asarray(z)[coquantile_index(x_ref, spec.q) - 1])
    if window is None:
        window = PLAIN_WINDOW
    if spec.kind == "npi":
        return sieve_npi(z, spec.k, window)
    return sieve_mpi(z, spec.k, window, denominator)
