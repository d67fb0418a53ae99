"""Exception hierarchy shared by all modules.

The CLI maps these onto exit codes: ConfigError -> 2,
WindowInsufficiencyError -> 3, EnumerationCapError -> 4.
"""


class FrobentropyError(Exception):
    """Base class for all package errors."""


class ConfigError(FrobentropyError):
    """Invalid experiment configuration."""


class FieldMismatchError(FrobentropyError):
    """Operands belong to different fields."""


class DivisionByZeroError(FrobentropyError, ZeroDivisionError):
    """Division by the zero element of a field."""


class DegreeOverflowError(FrobentropyError):
    """Polynomial degree exceeded the per-variable cap."""


class UnsupportedOperationError(FrobentropyError):
    """Operation not defined for this monoid/ring kind."""


class UnsupportedConfigurationError(FrobentropyError):
    """Configuration outside the concretely supported families."""


class EnumerationCapError(FrobentropyError):
    """A lattice enumeration would exceed the hard point cap."""

    def __init__(self, message, *, stage=None, e=None):
        super().__init__(message)
        self.stage = stage
        self.e = e


class WindowInsufficiencyError(FrobentropyError):
    """Nonzero activity detected at a truncation-window boundary."""

    def __init__(self, message, *, stage=None, suggested_cutoff=None):
        super().__init__(message)
        self.stage = stage
        self.suggested_cutoff = suggested_cutoff
