"""Exception types shared across the package."""

from __future__ import annotations


class StrongSeriesError(Exception):
    """Base class for all errors raised by this package."""


class UsageError(StrongSeriesError, ValueError):
    """Invalid argument, malformed input, or operands that cannot be combined."""


class MismatchError(UsageError):
    """Operands disagree on ring, variable count, or another structural datum."""


class ParseError(UsageError):
    """Text input violates the grammar; carries the offending position."""

    def __init__(self, message: str, text: str = "", position: int = -1):
        self.text = text
        self.position = position
        if position >= 0:
            message = f"{message} (at position {position}: {text[position:position + 12]!r})"
        super().__init__(message)


class ConstantTermError(ParseError):
    """A constant term appeared where only zero-constant-term series are allowed."""


class NotAUnitError(StrongSeriesError):
    """The element has no multiplicative inverse in its ring."""


class NotInvertibleError(StrongSeriesError):
    """The series has no compositional inverse (linear coefficient not a unit)."""
