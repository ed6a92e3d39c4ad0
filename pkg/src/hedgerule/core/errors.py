from __future__ import annotations

from typing import TYPE_CHECKING, Sequence

if TYPE_CHECKING:
    from ..modes.models import Violation


class HedgeruleError(Exception):
    """Base class of every error raised by the interpreter."""


class MalformedContextError(HedgeruleError):
    """A context did not contain exactly one hole."""


class ParseError(HedgeruleError):
    def __init__(self, message: str, line: int = 0, column: int = 0,
                 expected: Sequence[str] = ()):
        self.message = message
        self.line = line
        self.column = column
        self.expected = tuple(expected)
        super().__init__(str(self))

    def __str__(self) -> str:
        where = f"line {self.line}, column {self.column}: " if self.line else ""
        hint = f" (expected one of: {', '.join(sorted(self.expected))})" if self.expected else ""
        return f"{where}{self.message}{hint}"


class ModeError(HedgeruleError):
    def __init__(self, violations: Sequence[Violation]):
        self.violations = list(violations)
        lines = "\n".join(f"  {v}" for v in self.violations)
        super().__init__(f"program is not well-moded:\n{lines}")


class ConsultError(HedgeruleError):
    """The parsed program cannot be turned into a runnable program."""


class BuiltinError(HedgeruleError):
    """Evaluation of a builtin literal failed; aborts the current branch only."""


class DepthLimitExceeded(HedgeruleError):
    def __init__(self, limit: int, what: str = "derivation depth"):
        self.limit = limit
        super().__init__(f"{what} limit {limit} exceeded")


class InteractionError(HedgeruleError):
    """The interactive strategy ran without an interaction channel."""
