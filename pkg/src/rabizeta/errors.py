"""Exception and warning types shared across the package."""


class RabiZetaError(Exception):
    """Base class for all package errors."""


class DomainError(RabiZetaError, ValueError):
    """An argument lies outside the domain of the function."""


class PoleError(DomainError):
    """Evaluation requested at a pole."""


class ConvergenceError(RabiZetaError, RuntimeError):
    """A numerical procedure failed to reach the requested tolerance."""

    def __init__(self, message, iterations=None):
        super().__init__(message)
        self.iterations = iterations


class SeriesTruncationWarning(UserWarning):
    """The estimated series tail exceeds the requested relative error."""


class IllConditionedWarning(UserWarning):
    """A coefficient extraction looks numerically unreliable."""
