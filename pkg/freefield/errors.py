"""
Errors

Exception hierarchy shared by the algebra engines, the parser and the
verification suites.
"""

from dataclasses import dataclass
from typing import Optional


class FreeFieldError(Exception):
    """Base class for every error raised by the engines."""


class SpaceMismatchError(FreeFieldError):
    """Two states (or a state and an operator) live in incompatible spaces."""

    def __init__(self, left, right, operation: str = "combine"):
        self.left = left
        self.right = right
        super().__init__(
            f"cannot {operation} states of {left.describe()} and {right.describe()}"
        )


class SectorError(FreeFieldError):
    """A state violates the sector rules of its space (momentum, twist, half-modes)."""


class NotInAlgebraError(FreeFieldError):
    """A vector is used as an operator but does not belong to the acting algebra."""


class ConventionError(FreeFieldError):
    """A mode index convention cannot be applied to the given state."""


class BudgetExceededError(FreeFieldError):
    """A computation would exceed its configured budget."""


class UnknownSuiteError(FreeFieldError):
    """The requested verification suite is not registered."""


@dataclass(frozen=True)
class Span:
    """Half-open source range [start, end) inside a parsed text."""

    start: int
    end: int


class ParseError(FreeFieldError):
    """Syntax or sector error while reading a state expression."""

    def __init__(self, message: str, text: str = "", span: Optional[Span] = None):
        self.message = message
        self.text = text
        self.span = span
        super().__init__(self.render())

    def render(self) -> str:
        if self.span is None or not self.text:
            return self.message
        width = max(1, self.span.end - self.span.start)
        caret = " " * self.span.start + "^" * width
        return f"{self.message}\n  {self.text}\n  {caret}"
