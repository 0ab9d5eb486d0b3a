"""Dataset ingestion and the stuttering transform.

Datasets are delimiter-separated text files, one sample per line: the
class label first, then the values.  Missing values may be written as
``NaN`` (any case) or left empty; they are preserved for downstream
``nan_fill``.  Ragged lengths are allowed.  Labels are kept as opaque
strings.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EmptyDatasetError, MalformedLineError


@dataclass
class LabeledDataset:
    """Samples as ``(d, T)`` float arrays plus string class labels."""

    samples: list[np.ndarray]
    labels: list[str]

    def __post_init__(self):
        if len(self.samples) != len(self.labels):
            raise ValueError("samples and labels must have equal length")

    def __len__(self) -> int:
        return len(self.samples)

    @property
    def classes(self) -> list[str]:
        return sorted(set(self.labels))


def _parse_value(field: str) -> float:
    field = field.strip()
    if not field or field.lower() == "nan" or field == "?":
        return float("nan")
    return float(field)


def load_ucr(path, delimiter=None) -> LabeledDataset:
    """Load a label-first delimited dataset file.

    ``delimiter`` may be ``"\\t"`` or ``","``; by default it is sniffed
    from the first data line.
    """
    samples: list[np.ndarray] = []
    labels: list[str] = []
    with open(path, encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            sep = delimiter
            if sep is None:
                sep = "\t" if "\t" in line else ","
            fields = line.split(sep)
            if len(fields) < 2:
                raise MalformedLineError(path, line_no, "need a label and at least one value")
            label = fields[0].strip()
            if not label:
                raise MalformedLineError(path, line_no, "empty label")
            try:
                values = np.array([_parse_value(f) for f in fields[1:]], dtype=np.float64)
            except ValueError as exc:
                raise MalformedLineError(path, line_no, str(exc)) from None
            samples.append(values[None, :])
            labels.append(label)
    if not samples:
        raise EmptyDatasetError(f"{path} contains no samples")
    return LabeledDataset(samples, labels)


def stutter(x, proportion: float, seed) -> np.ndarray:
    """Duplicate values at random positions, lengthening the series.

    ``round(proportion * T)`` insertion positions are drawn uniformly
    with replacement from ``1..T`` (so one position can be duplicated
    several times); each chosen value is repeated immediately after
    itself.  The generator is numpy's seeded PCG64, so results are
    reproducible across platforms.  ``seed`` may also be a
    ``numpy.random.Generator`` to draw from an existing stream.
    """
    x = np.asarray(x, dtype=np.float64)
    if proportion < 0:
        raise ValueError("proportion must be nonnegative")
    T = x.shape[-1]
    k = int(round(proportion * T))
    if k == 0:
        return x.copy()
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    counts = np.bincount(rng.integers(0, T, size=k), minlength=T)
    return np.repeat(x, 1 + counts, axis=-1)


def stutter_dataset(dataset: LabeledDataset, proportion: float, seed) -> LabeledDataset:
    """Stutter every sample, drawing from one seeded stream in sample order."""
    rng = np.random.default_rng(seed)
    return LabeledDataset(
        [stutter(s, proportion, rng) for s in dataset.samples],
        list(dataset.labels),
    )


def lengthen_tail(x, k: int) -> np.ndarray:
    """Append the last value ``k`` times."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    x = np.asarray(x, dtype=np.float64)
    if k == 0:
        return x.copy()
    tail = np.repeat(x[..., -1:], k, axis=-1)
    return np.concatenate([x, tail], axis=-1)


def lengthen_dataset(dataset: LabeledDataset, k: int) -> LabeledDataset:
    return LabeledDataset(
        [lengthen_tail(s, k) for s in dataset.samples], list(dataset.labels)
    )
