class InvalidArgumentError(ValueError):
    """An argument is outside the domain an operation accepts."""


class InsufficientDataError(ValueError):
    """Too few samples to fit a model."""


class ModelSingularError(RuntimeError):
    """The covariance matrix could not be factorized even with the largest nugget."""


class DuplicatePointError(ValueError):
    """A point coincides with one already archived."""
