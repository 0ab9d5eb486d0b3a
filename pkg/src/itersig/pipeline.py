"""Feature pipelines: preparation chains, sum specs, and sieves per branch.

A :class:`PipelineConfig` is an ordered collection of branches.  Each
branch applies its preparation chain to every sample, evaluates a list
of iterated-sum specs on the prepared series, and reduces each
resulting series with a list of sieves.  The feature count is the sum
over branches of ``len(specs) * len(sieves)`` and the column order is
branch-major, then spec order, then sieve order.

:class:`IssFeatures` wraps a config as an sklearn-style transformer:
``fit`` estimates the quantile windows of the windowed sieves on
training data, ``transform`` produces the feature matrix.  Output is
deterministic and independent of the worker count.

Three named presets are provided: ``general`` (three branches mixing
exponentially weighted real sums, unweighted arctic sums on alternating
words, and cosine-weighted sums), ``twi`` (the time-warping-invariant
variant), and ``reduced:<real_w>:<arctic_len>:<cos_w>`` (the general
shape with its three size parameters exposed).
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field

import numpy as np
from joblib import Parallel, delayed
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.exceptions import NotFittedError

from . import semiring as sr
from .errors import ConfigError, DimensionMismatchError, EmptyTrainingSetError
from .iss import (
    NONSTRICT,
    STRICT,
    CosineWeighting,
    ExponentialWeighting,
    IssSpec,
    describe_weighting,
    iss,
)
from .prepare import apply_chain, chain_output_dim, check_steps
from .sieve import (
    PLAIN_WINDOW,
    SieveSpec,
    apply_sieve,
    batch_mpi,
    batch_npi,
    diff_k,
    fit_window,
    parse_sieve,
)
from .validation import as_series_list, common_dimension
from .words import Word, alternating_words, enumerate_words, parse_word

PRESET_NAMES = ("general", "twi", "reduced")

GENERAL_FREQUENCIES = (0.05, 0.15, 0.25, 0.35, 0.45)
GENERAL_COSINE_POWERS = (1, 2)
ALTERNATING_LENGTH = 48


@dataclass(frozen=True)
class BranchConfig:
    """One branch: preparation chain, sum specs, sieves."""

    prep: tuple[str, ...] = ()
    specs: tuple[IssSpec, ...] = ()
    sieves: tuple[SieveSpec, ...] = ()
    mpi_fixed_length: bool = False

    def validate(self):
        check_steps(self.prep)
        if not self.specs:
            raise ConfigError("a branch needs at least one iterated-sum spec")
        if not self.sieves:
            raise ConfigError("a branch needs at least one sieve")
        for spec in self.specs:
            spec.validate()
        for sv in self.sieves:
            sv.validate()
        return self


@dataclass(frozen=True)
class ColumnInfo:
    """Provenance of one feature column."""

    branch: int
    word: str
    weighting: str
    sieve: str

    def __str__(self) -> str:
        return f"b{self.branch}|{self.word}|{self.weighting}|{self.sieve}"


@dataclass(frozen=True)
class PipelineConfig:
    """Ordered branches plus a display name."""

    branches: tuple[BranchConfig, ...]
    name: str = "custom"

    def validate(self):
        if not self.branches:
            raise ConfigError("a pipeline needs at least one branch")
        for branch in self.branches:
            branch.validate()
        return self

    @property
    def feature_count(self) -> int:
        return sum(len(b.specs) * len(b.sieves) for b in self.branches)

    def columns(self) -> list[ColumnInfo]:
        out = []
        for bi, branch in enumerate(self.branches):
            for spec in branch.specs:
                for sv in branch.sieves:
                    out.append(
                        ColumnInfo(bi, str(spec.word), describe_weighting(spec.weighting), str(sv))
                    )
        return out

    def to_dict(self) -> dict:
        branches = []
        for branch in self.branches:
            by_weighting: list[dict] = []
            for spec in branch.specs:
                desc = _weighting_to_dict(spec.weighting)
                entry = None
                for cand in by_weighting:
                    if (
                        cand["semiring"] == spec.semiring
                        and cand["mode"] == spec.mode
                        and cand["weighting"] == desc
                    ):
                        entry = cand
                        break
                if entry is None:
                    entry = {
                        "semiring": spec.semiring,
                        "mode": spec.mode,
                        "weighting": desc,
                        "words": {"list": []},
                    }
                    by_weighting.append(entry)
                entry["words"]["list"].append(str(spec.word))
            base = {
                "prep": list(branch.prep),
                "sieves": [str(sv) for sv in branch.sieves],
            }
            if branch.mpi_fixed_length:
                base["mpi_fixed_length"] = True
            if len(by_weighting) == 1:
                branches.append({**base, **by_weighting[0]})
            else:
                # Split heterogeneous branches; feature order is preserved
                # only for configs built from the JSON schema itself.
                for entry in by_weighting:
                    branches.append({**base, **entry})
        return {"name": self.name, "branches": branches}


def _weighting_to_dict(weighting) -> dict:
    if weighting is None:
        return {"kind": "none"}
    if isinstance(weighting, ExponentialWeighting):
        return {
            "kind": "exponential",
            "h": weighting.h_kind,
            "scale": weighting.scale,
            "include_outer": weighting.include_outer,
        }
    return {"kind": "cosine", "b": weighting.b, "f": weighting.f}


def _weightings_from_dict(desc) -> list:
    if desc is None:
        return [None]
    kind = desc.get("kind", "none")
    if kind == "none":
        return [None]
    if kind == "exponential":
        return [
            ExponentialWeighting(
                h_kind=desc.get("h", "id"),
                scale=float(desc.get("scale", 50.0)),
                include_outer=bool(desc.get("include_outer", False)),
            )
        ]
    if kind == "cosine":
        bs = desc.get("b", 1)
        fs = desc.get("f", 0.5)
        bs = bs if isinstance(bs, (list, tuple)) else [bs]
        fs = fs if isinstance(fs, (list, tuple)) else [fs]
        return [CosineWeighting(b=int(b), f=float(f)) for b in bs for f in fs]
    raise ConfigError(f"unknown weighting kind {kind!r}")


def _words_from_dict(desc, prep) -> list[Word]:
    if "list" in desc:
        texts = desc["list"]
        d = desc.get("d")
        if d is None:
            d = max(parse_word(t, 64).max_dim for t in texts)
        return [parse_word(t, int(d)) for t in texts]
    if "max_weight" in desc:
        d = int(desc.get("d", chain_output_dim(prep, 1)))
        return enumerate_words(d, int(desc["max_weight"]))
    if "alternating" in desc:
        alt = desc["alternating"]
        dims = alt["dims"]
        pairs = dims if dims and isinstance(dims[0], (list, tuple)) else [dims]
        length = int(alt["length"])
        out = []
        for pair in pairs:
            plus, minus = alternating_words((int(pair[0]), int(pair[1])), length)
            out.extend([plus, minus])
        return out
    raise ConfigError(f"cannot interpret words descriptor {desc!r}")


def config_from_dict(data: dict) -> PipelineConfig:
    """Build a config from the JSON document schema."""
    branches = []
    for bd in data["branches"]:
        prep = tuple(bd.get("prep", ()))
        semiring = bd.get("semiring", sr.REAL)
        mode = bd.get("mode", STRICT)
        words = _words_from_dict(bd["words"], prep)
        specs = [
            IssSpec(word, semiring, mode, weighting)
            for weighting in _weightings_from_dict(bd.get("weighting"))
            for word in words
        ]
        sieves = tuple(parse_sieve(s) for s in bd["sieves"])
        branches.append(
            BranchConfig(
                prep=prep,
                specs=tuple(specs),
                sieves=sieves,
                mpi_fixed_length=bool(bd.get("mpi_fixed_length", False)),
            )
        )
    return PipelineConfig(tuple(branches), name=data.get("name", "custom")).validate()


def _standard_sieves() -> tuple[SieveSpec, ...]:
    names = (
        "npi:0:0.5:1",
        "npi:1:0.5:1",
        "npi:2:0.5:1",
        "mpi:0:0.5:1",
        "mpi:1:0.5:1",
        "mpi:2:0.5:1",
        "end",
    )
    return tuple(parse_sieve(n) for n in names)


def _all_alternating(dims: int, length: int) -> list[Word]:
    out = []
    for a in range(1, dims + 1):
        for b in range(1, dims + 1):
            plus, minus = alternating_words((a, b), length)
            out.extend([plus, minus])
    return out


def reduced_config(real_weight: int, arctic_length: int, cosine_weight: int) -> PipelineConfig:
    """The three-branch general shape with its size parameters exposed."""
    if min(real_weight, arctic_length, cosine_weight) < 1:
        raise ConfigError("all size parameters must be at least 1")
    sieves = _standard_sieves()
    real_specs = tuple(
        IssSpec(w, sr.REAL, STRICT, ExponentialWeighting("id", 50.0, False))
        for w in enumerate_words(2, real_weight)
    )
    arctic_specs = tuple(
        IssSpec(w, sr.ARCTIC, NONSTRICT) for w in _all_alternating(2, arctic_length)
    )
    cosine_words = enumerate_words(2, cosine_weight)
    cosine_specs = tuple(
        IssSpec(w, sr.REAL, STRICT, CosineWeighting(b, f))
        for b in GENERAL_COSINE_POWERS
        for f in GENERAL_FREQUENCIES
        for w in cosine_words
    )
    branches = (
        BranchConfig(prep=("inc_lift", "std"), specs=real_specs, sieves=sieves),
        BranchConfig(prep=("inc_lift",), specs=arctic_specs, sieves=sieves),
        BranchConfig(prep=("inc_lift", "std"), specs=cosine_specs, sieves=sieves),
    )
    name = f"reduced:{real_weight}:{arctic_length}:{cosine_weight}"
    return PipelineConfig(branches, name=name).validate()


def general_config() -> PipelineConfig:
    """The full-size three-branch pipeline for univariate input."""
    cfg = reduced_config(6, ALTERNATING_LENGTH, 4)
    return PipelineConfig(cfg.branches, name="general")


def twi_config() -> PipelineConfig:
    """The time-warping-invariant pipeline.

    Real sums run on increments with L1-controlled exponential
    weighting; arctic sums run on the raw series.  The sieves are the
    plain positive-increment count and mean (window ``(0, inf]``, which
    stuttering cannot enter) plus the last value, and the mean uses the
    series length recorded at fit time as its denominator.
    """
    sieves = tuple(parse_sieve(n) for n in ("npi:1", "mpi:1", "end"))
    real_specs = tuple(
        IssSpec(w, sr.REAL, STRICT, ExponentialWeighting("l1", 50.0, False))
        for w in enumerate_words(1, 9)
    )
    plus, minus = alternating_words((1, 1), ALTERNATING_LENGTH)
    arctic_specs = (
        IssSpec(plus, sr.ARCTIC, NONSTRICT),
        IssSpec(minus, sr.ARCTIC, NONSTRICT),
    )
    branches = (
        BranchConfig(
            prep=("inc",), specs=real_specs, sieves=sieves, mpi_fixed_length=True
        ),
        BranchConfig(prep=(), specs=arctic_specs, sieves=sieves, mpi_fixed_length=True),
    )
    return PipelineConfig(branches, name="twi").validate()


def resolve_config(value) -> PipelineConfig:
    """Resolve a preset name, ``reduced:a:b:c`` string, file path, dict, or config."""
    if isinstance(value, PipelineConfig):
        return value.validate()
    if isinstance(value, dict):
        return config_from_dict(value)
    if isinstance(value, str):
        if value == "general":
            return general_config()
        if value == "twi":
            return twi_config()
        if value.startswith("reduced:"):
            parts = value.split(":")[1:]
            if len(parts) != 3:
                raise ConfigError("the reduced preset is addressed as reduced:<real_w>:<arctic_len>:<cos_w>")
            return reduced_config(int(parts[0]), int(parts[1]), int(parts[2]))
        if value == "reduced":
            raise ConfigError(
                "the reduced preset needs explicit sizes: reduced:<real_w>:<arctic_len>:<cos_w>"
            )
        if os.path.exists(value):
            with open(value, encoding="utf-8") as fh:
                return config_from_dict(json.load(fh))
        raise ConfigError(
            f"unknown config {value!r}; presets are 'general', 'twi', "
            "'reduced:<real_w>:<arctic_len>:<cos_w>', or a JSON config file path"
        )
    raise ConfigError(f"cannot interpret config {value!r}")


def _group_by_length(samples) -> dict[int, list[int]]:
    groups: dict[int, list[int]] = {}
    for i, s in enumerate(samples):
        groups.setdefault(s.shape[-1], []).append(i)
    return groups


class IssFeatures(TransformerMixin, BaseEstimator):
    """Iterated-sums feature extraction as an sklearn transformer.

    Parameters
    ----------
    config : str, dict, or PipelineConfig, default="general"
        Preset name (``"general"``, ``"twi"``,
        ``"reduced:<real_w>:<arctic_len>:<cos_w>"``), a JSON config file
        path, a parsed config dict, or a :class:`PipelineConfig`.
    n_jobs : int, optional
        Worker count for evaluating sum specs in parallel.  The output
        does not depend on this value.

    Attributes
    ----------
    config_ : PipelineConfig
        The resolved configuration.
    columns_ : list of ColumnInfo
        Provenance (branch, word, weighting, sieve) per feature column.
    windows_ : dict
        Fitted quantile windows keyed by (branch, spec, sieve) index.
    """

    def __init__(self, config="general", n_jobs=None):
        self.config = config
        self.n_jobs = n_jobs

    def fit(self, X, y=None):
        self._run(X, fitting=True, collect=False)
        return self

    def fit_transform(self, X, y=None):
        return self._run(X, fitting=True, collect=True)

    def transform(self, X):
        if not hasattr(self, "windows_"):
            raise NotFittedError("this IssFeatures instance is not fitted yet")
        return self._run(X, fitting=False, collect=True)

    def get_feature_names_out(self, input_features=None):
        if not hasattr(self, "columns_"):
            raise NotFittedError("this IssFeatures instance is not fitted yet")
        return np.asarray([str(c) for c in self.columns_], dtype=object)

    # internal machinery

    def _run(self, X, fitting, collect):
        if fitting:
            config = resolve_config(self.config)
            samples = as_series_list(X)
            if not samples:
                raise EmptyTrainingSetError("fit needs at least one sample")
            dim = common_dimension(samples)
            for branch in config.branches:
                out_dim = chain_output_dim(branch.prep, dim)
                for spec in branch.specs:
                    if spec.word.max_dim > out_dim:
                        raise DimensionMismatchError(
                            f"word {spec.word} needs dimension {spec.word.max_dim}, "
                            f"branch output has {out_dim}"
                        )
            self.config_ = config
            self.input_dim_ = dim
            self.columns_ = config.columns()
            self.windows_ = {}
            self.ref_lengths_ = {}
        else:
            config = self.config_
            samples = as_series_list(X)
            if samples and common_dimension(samples) != self.input_dim_:
                raise DimensionMismatchError(
                    f"samples have dimension {common_dimension(samples)}, "
                    f"fitted for {self.input_dim_}"
                )
        n = len(samples)
        out = np.empty((n, config.feature_count)) if collect else None
        col = 0
        for bi, branch in enumerate(config.branches):
            prepped = [apply_chain(branch.prep, s) for s in samples]
            for p in prepped:
                if np.isnan(p).any():
                    raise ConfigError(
                        "series still contain NaN after preparation; "
                        "start the chain with 'nan_fill'"
                    )
            if fitting and branch.mpi_fixed_length:
                self.ref_lengths_[bi] = max(p.shape[-1] for p in prepped)
            groups = _group_by_length(prepped)
            batches = {}
            for T, idxs in groups.items():
                batches[T] = (
                    idxs,
                    np.stack([prepped[i] for i in idxs]),
                    np.stack([samples[i] for i in idxs]),
                    {},  # letter-series cache shared across specs
                )
            n_specs = len(branch.specs)
            base_col = col

            inc_orders = sorted({sv.k for sv in branch.sieves if sv.kind in ("npi", "mpi")})
            ref_len = self.ref_lengths_.get(bi) if branch.mpi_fixed_length else None

            def run_spec(si, branch=branch, batches=batches, bi=bi, base_col=base_col,
                         inc_orders=inc_orders, ref_len=ref_len):
                spec = branch.specs[si]
                needs_h = isinstance(spec.weighting, ExponentialWeighting)
                group_z = []
                for idxs, prep_batch, raw_batch, cache in batches.values():
                    zb = iss(
                        prep_batch,
                        spec,
                        h_ref=raw_batch if needs_h else None,
                        cache=cache,
                    )
                    group_z.append((idxs, zb, {k: diff_k(zb, k) for k in inc_orders}))
                for vi, sv in enumerate(branch.sieves):
                    key = (bi, si, vi)
                    if fitting and sv.needs_fit:
                        pool = np.concatenate([gd[sv.k].ravel() for _, _, gd in group_z])
                        self.windows_[key] = fit_window(pool, sv.alpha_l, sv.alpha_r)
                    if not collect:
                        continue
                    window = self.windows_.get(key, PLAIN_WINDOW)
                    column = base_col + si * len(branch.sieves) + vi
                    for idxs, zb, gd in group_z:
                        if sv.kind == "end":
                            out[idxs, column] = zb[:, -1]
                        elif sv.kind == "npi":
                            out[idxs, column] = batch_npi(gd[sv.k], window)
                        elif sv.kind == "mpi":
                            denom = ref_len if ref_len is not None else zb.shape[-1]
                            out[idxs, column] = batch_mpi(gd[sv.k], window, denom)
                        else:
                            for row, i in enumerate(idxs):
                                out[i, column] = apply_sieve(
                                    sv, zb[row], window=window, x_ref=samples[i]
                                )

            if self.n_jobs in (None, 1) or n_specs == 1:
                for si in range(n_specs):
                    run_spec(si)
            else:
                Parallel(n_jobs=self.n_jobs, backend="threading")(
                    delayed(run_spec)(si) for si in range(n_specs)
                )
            col = base_col + n_specs * len(branch.sieves)
        if collect:
            if not np.all(np.isfinite(out)):
                raise FloatingPointError("feature matrix contains non-finite entries")
            return out
        return None
