"""Exception hierarchy shared by all modules."""


class HarmballError(Exception):
    """Base class for every error raised by the package."""


class DomainError(HarmballError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class PreconditionError(HarmballError, ValueError):
    """A parameter combination violates a stated hypothesis."""


class UnsupportedError(HarmballError, NotImplementedError):
    """The requested representation or dimension is not implemented."""


class TruncationBudgetError(HarmballError, ArithmeticError):
    """A series cannot be certified to tolerance within the term cap."""

    def __init__(self, message, r_max=None):
        super().__init__(message)
        self.r_max = r_max


class CoefficientOverflowError(HarmballError, OverflowError):
    """A Gamma-ratio coefficient left the representable range."""
