"""The two commutative semirings used by the sum engine.

``real`` is the field of real numbers viewed as a semiring.  ``arctic``
is the max-plus semiring: addition is ``max``, multiplication is ``+``,
the additive identity is ``-inf`` and the multiplicative identity is
``0``.  All operations accept scalars or numpy arrays, act elementwise,
and are pure.
"""

from __future__ import annotations

import numpy as np

from .errors import NegativeExponentError

REAL = "real"
ARCTIC = "arctic"
SEMIRINGS = (REAL, ARCTIC)

NEG_INF = float("-inf")


def check_semiring(semiring):
    if semiring not in SEMIRINGS:
        raise ValueError(f"unknown semiring {semiring!r}, expected one of {SEMIRINGS}")
    return semiring


def zero(semiring):
    """Additive identity (0 for real, -inf for arctic)."""
    return 0.0 if semiring == REAL else NEG_INF


def one(semiring):
    """Multiplicative identity (1 for real, 0 for arctic)."""
    return 1.0 if semiring == REAL else 0.0


def add(a, b, semiring):
    if semiring == REAL:
        return np.add(a, b)
    return np.maximum(a, b)


def mul(a, b, semiring):
    if semiring == REAL:
        return np.multiply(a, b)
    return np.add(a, b)


def power(a, n, semiring):
    """n-fold semiring product of ``a``: ``a**n`` for real, ``n*a`` for arctic.

    ``n`` must be a nonzero integer.  For the real semiring ``n`` must be
    positive; reciprocals would be singular at zero and are not defined
    here.
    """
    if n == 0:
        raise ValueError("exponent must be nonzero")
    if semiring == REAL:
        if n < 0:
            raise NegativeExponentError(
                "negative exponents are only defined for the arctic semiring"
            )
        return np.power(a, n)
    return np.multiply(float(n), a)


def cumulative(z, shift, semiring):
    """Running semiring sum along the last axis.

    Entry ``t`` (1-based) of the result is the additive identity for
    ``t <= shift`` and the sum of ``z[..., :t-shift]`` otherwise.
    """
    z = np.asarray(z, dtype=np.float64)
    if semiring == REAL:
        acc = np.cumsum(z, axis=-1)
    else:
        acc = np.maximum.accumulate(z, axis=-1)
    if shift == 0:
        return acc
    out = np.empty_like(acc)
    out[..., :shift] = zero(semiring)
    out[..., shift:] = acc[..., : acc.shape[-1] - shift]
    return out
