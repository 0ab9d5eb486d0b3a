"""Exception types shared across the package."""


class ItersigError(Exception):
    """Base class for all package-specific errors."""


class ParseError(ItersigError, ValueError):
    """Malformed word or sieve text."""


class DimensionOutOfRangeError(ItersigError, ValueError):
    """A letter references a dimension index beyond the series dimension."""


class ZeroExponentError(ItersigError, ValueError):
    """An exponent (possibly after merging repeated dimensions) is zero."""


class NegativeExponentError(ItersigError, ValueError):
    """Negative exponents are only defined for the arctic semiring."""


class ConfigError(ItersigError, ValueError):
    """Invalid or unsupported combination of pipeline settings."""


class OracleSizeError(ItersigError, ValueError):
    """Brute-force enumeration would be too large to run."""


class NotUnivariateError(ItersigError, ValueError):
    """A transform that requires one-dimensional input got more dimensions."""


class EmptyPoolError(ItersigError, ValueError):
    """Quantile fitting received an empty value pool."""


class EmptyTrainingSetError(ItersigError, ValueError):
    """Fitting requires at least one training sample."""


class DimensionMismatchError(ItersigError, ValueError):
    """Samples with inconsistent dimensionality."""


class SingleClassError(ItersigError, ValueError):
    """Classifier training requires at least two classes."""


class EmptyFeaturesError(ItersigError, ValueError):
    """Classifier training requires at least one feature column."""


class ShapeMismatchError(ItersigError, ValueError):
    """Feature matrix shape differs from the fitted shape."""


class LengthMismatchError(ItersigError, ValueError):
    """Two sequences that must have equal length do not."""


class MalformedLineError(ItersigError, ValueError):
    """A dataset file line could not be parsed."""

    def __init__(self, path, line_no, message):
        super().__init__(f"{path}:{line_no}: {message}")
        self.path = str(path)
        self.line_no = line_no


class EmptyDatasetError(ItersigError, ValueError):
    """A dataset file contained no samples."""
