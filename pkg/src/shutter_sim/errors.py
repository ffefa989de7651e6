"""Exception types shared across the toolkit."""

from __future__ import annotations


class SimError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(SimError):
    """A well-formed input violates a semantic rule (bad reference, bad range)."""


class ConfigurationError(SimError):
    """A controller artifact is wired incorrectly (unknown names, bad structure)."""


class ParseError(SimError):
    """A syntax error in a scenario or tree source, located at line/column.

    Line and column are 1-based and point at the first offending character.
    """

    def __init__(self, line: int, column: int, message: str, expected: str | None = None):
        self.line = line
        self.column = column
        self.message = message
        self.expected = expected
        detail = f"line {line}, column {column}: {message}"
        if expected is not None:
            detail += f" (expected {expected})"
        super().__init__(detail)
