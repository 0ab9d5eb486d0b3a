"""Arctic iterated sums together with the indices attaining them.

For a word ``[a_1]...[a_p]`` over the arctic semiring in non-strict
mode, the running optimum ``z_t`` equals the plain iterated sum, and the
index arrays ``J`` record, per level, where the optimum was last
improved.  A backward pass then rewrites each level's indices after the
position chosen by the level above it, so that at the final time step
the tuple ``(J[0][T-1], ..., J[p-1][T-1])`` is nondecreasing and attains
``z_T``.  Runtime is ``O(T * p)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import semiring as sr
from .iss import _as_batch, _letter_series
from .words import Word


@dataclass
class ArgmaxTrace:
    """Running optima and 1-based index rows, before and after correction."""

    values: np.ndarray            # (T,)
    indices: np.ndarray           # (p, T), backward-corrected
    forward_indices: np.ndarray   # (p, T), as produced by the forward scans


def arctic_iss_with_indices(x, word: Word) -> ArgmaxTrace:
    """Non-strict arctic iterated sum of ``x`` with argmax tracking.

    The forward phase accumulates one letter per level onto the running
    optimum and rescans it, keeping the earlier index on ties (an entry
    is only replaced when strictly greater).  ``values`` equals
    ``iss(x, IssSpec(word, "arctic", "nonstrict"))`` entrywise.
    """
    batch, single = _as_batch(x)
    if not single:
        raise ValueError("argmax tracking evaluates one series at a time")
    series = batch[0]
    T = series.shape[-1]
    p = word.length
    steps = np.arange(1, T + 1, dtype=np.int64)
    z = np.zeros(T)  # multiplicative identity, so level 1 starts from the letter itself
    J = np.ones((p, T), dtype=np.int64)
    for k, letter in enumerate(word.letters):
        z = z + _letter_series(batch, letter, sr.ARCTIC)[0]
        running = np.maximum.accumulate(z)
        improved = np.empty(T, dtype=bool)
        improved[0] = True
        improved[1:] = z[1:] > running[:-1]
        J[k] = np.maximum.accumulate(np.where(improved, steps, 0))
        z = running
    forward = J.copy()
    for k in range(p - 1, 0, -1):
        t_hat = int(J[k, T - 1])
        J[k - 1, t_hat:] = J[k - 1, t_hat - 1]
    return ArgmaxTrace(values=z, indices=J, forward_indices=forward)
