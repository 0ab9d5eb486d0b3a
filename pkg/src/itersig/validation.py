"""Input validation helpers for series-valued datasets.

The estimators follow the sklearn convention for collections: ``X`` may
be a list of per-sample arrays (each ``(T,)`` or ``(d, T)``, ragged
lengths allowed), a 2-D array of shape ``(n_samples, T)`` interpreted as
univariate rows, or a 3-D array ``(n_samples, d, T)``.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionMismatchError


def as_series(x) -> np.ndarray:
    """Coerce one sample to a ``(d, T)`` float array; NaN is preserved."""
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim == 1:
        arr = arr[None, :]
    if arr.ndim != 2:
        raise ValueError(f"a sample must be a (T,) or (d, T) array, got shape {arr.shape}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"a sample must be nonempty, got shape {arr.shape}")
    return arr


def as_series_list(X) -> list[np.ndarray]:
    """Coerce a collection of samples to a list of ``(d, T)`` arrays."""
    if isinstance(X, np.ndarray):
        if X.ndim == 2:
            samples = [row[None, :].astype(np.float64) for row in X]
        elif X.ndim == 3:
            samples = [s.astype(np.float64) for s in X]
        else:
            raise ValueError(
                f"an array dataset must be (n, T) or (n, d, T), got shape {X.shape}"
            )
    else:
        samples = [as_series(s) for s in X]
    return samples


def common_dimension(samples) -> int:
    """The shared dimension count of all samples."""
    dims = {s.shape[0] for s in samples}
    if len(dims) != 1:
        raise DimensionMismatchError(f"samples have mixed dimensions {sorted(dims)}")
    return dims.pop()
