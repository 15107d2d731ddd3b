"""Exception types shared across the package.

The CLI maps these onto exit codes: ParseError and OSError are I/O-level
failures (exit 1); ValidationError, DomainError and ConfigError are
validation or configuration failures (exit 2).
"""


class SqfrError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(SqfrError):
    """A dataset or grouped-score collection violates a structural invariant."""


class DomainError(SqfrError):
    """An operation was called with inputs outside its mathematical domain."""


class ParseError(SqfrError):
    """A file could not be parsed; the message carries a row number or JSON path."""


class ConfigError(SqfrError):
    """Invalid configuration: unknown names, missing columns, bad parameters."""
