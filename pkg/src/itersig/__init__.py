"""Iterated-sums signature features over real and max-plus semirings."""

from .argmax import ArgmaxTrace, arctic_iss_with_indices
from .classify import CvRidgeClassifier, accuracy, default_alphas
from .data import (
    LabeledDataset,
    lengthen_tail,
    load_ucr,
    stutter,
    stutter_dataset,
)
from .iss import (
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
from .pipeline import (
    BranchConfig,
    ColumnInfo,
    IssFeatures,
    PipelineConfig,
    config_from_dict,
    general_config,
    reduced_config,
    resolve_config,
    twi_config,
)
from .prepare import apply_chain, increment_lift, increments, nan_fill, standardize
from .sieve import (
    SieveSpec,
    coquantile_index,
    fit_window,
    parse_sieve,
    sieve_end,
    sieve_mpi,
    sieve_npi,
)
from .words import (
    ExtendedLetter,
    Word,
    alternating_words,
    enumerate_words,
    format_word,
    parse_word,
)

__version__ = "0.1.0"

__all__ = [
    "ArgmaxTrace",
    "BranchConfig",
    "ColumnInfo",
    "CosineWeighting",
    "CvRidgeClassifier",
    "ExponentialWeighting",
    "ExtendedLetter",
    "IssFeatures",
    "IssSpec",
    "LabeledDataset",
    "NONSTRICT",
    "PipelineConfig",
    "STRICT",
    "SieveSpec",
    "Word",
    "accuracy",
    "alternating_words",
    "apply_chain",
    "arctic_iss_with_indices",
    "config_from_dict",
    "coquantile_index",
    "default_alphas",
    "enumerate_words",
    "fit_window",
    "format_word",
    "general_config",
    "h_eval",
    "increment_lift",
    "increments",
    "iss",
    "iss_brute",
    "lengthen_tail",
    "letter_eval",
    "load_ucr",
    "nan_fill",
    "parse_sieve",
    "parse_word",
    "reduced_config",
    "resolve_config",
    "sieve_end",
    "sieve_mpi",
    "sieve_npi",
    "standardize",
    "stutter",
    "stutter_dataset",
    "twi_config",
]
