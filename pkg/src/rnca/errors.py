"""Exception and warning types shared across the package.

The CLI maps these onto process exit codes: ArgumentError -> 2,
DataError -> 3, NumericError (and CapacityError) -> 4.
"""


class RncaError(Exception):
    """Base class for all package errors."""


class ArgumentError(RncaError):
    """A parameter value is outside its documented range."""


class DataError(RncaError):
    """Input data is malformed, mismatched, or statistically unusable."""


class NumericError(RncaError):
    """Non-finite values were encountered or a numeric guard tripped."""


class CapacityError(NumericError):
    """An exact oracle was requested above the configured size cap."""


class DegenerateDataWarning(UserWarning):
    """Emitted when a statistic falls back to a default on degenerate data."""
