from __future__ import annotations

from typing import Iterable, Literal

from pydantic import BaseModel, field_validator

from ..syntax.models import ModeDeclaration

ViolationKind = Literal[
    "unbound-input",
    "unbound-negative-output",
    "nonground-strategy",
    "strategy-var-escape",
    "unbound-output",
    "unknown-predicate",
]

Modes = tuple[frozenset[int], frozenset[int]]

_COMPARISONS = ("<", ">", "=<", ">=", "=:=", "=\\=")

BUILTIN_MODES: dict[tuple[str, int], Modes] = {
    ("is", 2): (frozenset({2}), frozenset({1})),
    **{(op, 2): (frozenset({1, 2}), frozenset()) for op in _COMPARISONS},
    ("write", 1): (frozenset({1}), frozenset()),
    ("nl", 0): (frozenset(), frozenset()),
    ("true", 0): (frozenset(), frozenset()),
    ("fail", 0): (frozenset(), frozenset()),
}

# strategy, input hedge -> output hedge
TRANSFORM_MODES: Modes = (frozenset({1, 2}), frozenset({3}))


class Violation(BaseModel, frozen=True):
    location: str
    literal_index: int
    kind: ViolationKind
    variables: tuple[str, ...]

    @field_validator("variables")
    @classmethod
    def _cites_something(cls, v: tuple[str, ...]) -> tuple[str, ...]:
        if not v:
            raise ValueError("a violation must cite at least one variable or term")
        return v

    def __str__(self) -> str:
        where = "head" if self.literal_index == 0 else f"literal {self.literal_index}"
        return f"{self.location}, {where}: {self.kind} {', '.join(self.variables)}"


class ModeTable:
    """Input and output argument positions of every predicate the checker knows."""

    def __init__(self, entries: dict[tuple[str, int], Modes] | None = None):
        self._entries: dict[tuple[str, int], Modes] = dict(BUILTIN_MODES)
        self._entries.update(entries or {})

    @classmethod
    def from_declarations(cls, declarations: Iterable[ModeDeclaration]) -> "ModeTable":
        return cls({(d.name, d.arity): (d.inputs(), d.outputs()) for d in declarations})

    def lookup(self, name, arity: int) -> Modes | None:
        return self._entries.get((name, arity))

    def __contains__(self, indicator) -> bool:
        return indicator in self._entries
