"""Preprocessing transforms applied before the iterated sums.

All transforms take and return ``(d, T)`` arrays, preserve the length
``T``, and are pure.  Config-file step names: ``nan_fill``, ``std``,
``inc``, ``inc_lift``.
"""

from __future__ import annotations

import numpy as np

from .errors import ConfigError, NotUnivariateError

STD_EPS = 1e-12


def nan_fill(x) -> np.ndarray:
    """Replace each NaN by the most recent non-NaN value in its dimension.

    Leading NaNs become 0.
    """
    x = np.atleast_2d(np.asarray(x, dtype=np.float64))
    mask = np.isnan(x)
    if not mask.any():
        return x.copy()
    T = x.shape[-1]
    idx = np.where(mask, -1, np.arange(T))
    idx = np.maximum.accumulate(idx, axis=-1)
    out = np.take_along_axis(np.where(mask, 0.0, x), np.maximum(idx, 0), axis=-1)
    out[idx < 0] = 0.0
    return out


def standardize(x) -> np.ndarray:
    """Per-dimension standardization with population standard deviation.

    Dimensions with (near) zero deviation map to all zeros.
    """
    x = np.atleast_2d(np.asarray(x, dtype=np.float64))
    mean = x.mean(axis=-1, keepdims=True)
    std = x.std(axis=-1, keepdims=True)
    safe = np.where(std < STD_EPS, 1.0, std)
    out = (x - mean) / safe
    out[np.broadcast_to(std < STD_EPS, out.shape)] = 0.0
    return out


def increments(x) -> np.ndarray:
    """Entrywise increments per dimension, first entry 0."""
    x = np.atleast_2d(np.asarray(x, dtype=np.float64))
    out = np.zeros_like(x)
    out[..., 1:] = np.diff(x, axis=-1)
    return out


def increment_lift(x) -> np.ndarray:
    """Lift a univariate series to two dimensions: the series and its increments."""
    x = np.atleast_2d(np.asarray(x, dtype=np.float64))
    if x.shape[0] != 1:
        raise NotUnivariateError(f"increment lift needs univariate input, got {x.shape[0]} dims")
    return np.vstack([x, increments(x)])


_STEPS = {
    "nan_fill": nan_fill,
    "std": standardize,
    "inc": increments,
    "inc_lift": increment_lift,
}


def check_steps(steps):
    for step in steps:
        if step not in _STEPS:
            raise ConfigError(f"unknown preparation step {step!r}, expected one of {sorted(_STEPS)}")
    return tuple(steps)


def apply_chain(steps, x) -> np.ndarray:
    """Apply preparation steps left to right; an empty chain is the identity."""
    out = np.atleast_2d(np.asarray(x, dtype=np.float64))
    for step in steps:
        out = _STEPS[step](out)
    return out


def chain_output_dim(steps, d: int) -> int:
    """Dimension of the chain output for input dimension ``d``."""
    for step in steps:
        if step == "inc_lift":
            if d != 1:
                raise NotUnivariateError("increment lift needs univariate input")
            d = 2
        elif step not in _STEPS:
            raise ConfigError(f"unknown preparation step {step!r}")
    return d
