"""
Exception types shared by every decomposition module.
"""


class DecompositionError(Exception):
    """Base class for all failures raised by the decomposition library."""


class InsufficientDataError(DecompositionError):
    """Not enough extrema (or rail points) for the requested operation."""


class PolicyViolationError(DecompositionError):
    """The data does not satisfy what the selected extension policy assumes."""


class OutOfRangeError(DecompositionError, ValueError):
    """A coordinate fell outside the support of a piecewise-linear function."""


class CoverageError(DecompositionError):
    """Samples lie outside the span of the extended extrema."""


class ConsistencyError(DecompositionError):
    """An internal invariant failed (usually a sign of an extrema detection bug)."""


class OrderingError(DecompositionError, ValueError):
    """Timestamps are not strictly increasing."""

    def __init__(self, message: str, row: int = None):
        super().__init__(message)
        self.row = row


class CsvParseError(DecompositionError, ValueError):
    """A CSV cell could not be read as a number."""

    def __init__(self, message: str, row: int = None):
        super().__init__(message)
        self.row = row


class EmptyInputError(DecompositionError, ValueError):
    """The input holds no samples."""


class ConfigError(DecompositionError, ValueError):
    """Invalid run configuration."""


class NoMoreModes(Exception):
    """
    Signal that the input has fewer than two interior extrema.

    This is not a failure: it ends a decomposition in the regular way.
    """

    def __init__(self, extrema_count: int = 0):
        super().__init__(f"only {extrema_count} interior extrema, no further mode")
        self.extrema_count = extrema_count
