"""Exception types shared across the package.

Everything derives from :class:`ValueError` so that callers who do not care
about the fine-grained category can catch one base class.
"""


class GapError(ValueError):
    """Timestamps are not consecutive hourly steps."""


class DomainError(ValueError):
    """A value lies outside its physical domain (negative power/irradiance,
    or an absent irradiance reading)."""


class DataError(ValueError):
    """Supervised data contains NaN or non-finite entries."""


class InsufficientDataError(ValueError):
    """Too few observations to carry out the requested operation."""


class IncompleteDataError(ValueError):
    """An operation that requires a fully observed series received one
    with missing values."""


class EmptyEvaluationError(ValueError):
    """No observed points are available to evaluate a metric on."""


class DegenerateNormalizationError(ValueError):
    """A normalising constant is zero, so the metric is undefined."""


class ExperimentError(RuntimeError):
    """One or more experiment cells failed; partial results were written."""
