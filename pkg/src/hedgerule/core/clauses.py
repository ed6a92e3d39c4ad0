"""Literals, clauses and the other items a program is made of."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from .terms import App, Hedge, Term, VarKind, Variable, variables


@dataclass(frozen=True, slots=True)
class SourceRef:
    origin: str = "<input>"
    line: int = 0

    def __str__(self) -> str:
        return f"{self.origin}:{self.line}" if self.line else self.origin


@dataclass(frozen=True, slots=True)
class Transform:
    """``st :: lhs ==> rhs``, or ``st :: lhs =\\=> rhs`` when negative."""
    strategy: Term
    lhs: Hedge
    rhs: Hedge
    negative: bool = False

    def positive(self) -> "Transform":
        return Transform(self.strategy, self.lhs, self.rhs) if self.negative else self

    def __str__(self) -> str:
        from ..syntax.printer import format_literal
        return format_literal(self)


@dataclass(frozen=True, slots=True)
class Call:
    """A builtin or predicate-clause literal."""
    goal: App

    @property
    def indicator(self) -> tuple[str | int, int]:
        return self.goal.head.name, len(self.goal.args)

    def __str__(self) -> str:
        from ..syntax.printer import format_literal
        return format_literal(self)


@dataclass(frozen=True, slots=True)
class Cut:
    def __str__(self) -> str:
        return "!"


@dataclass(frozen=True, slots=True)
class Match:
    """Forces ``pattern`` (caller side) to match the produced ``subject``."""
    pattern: Hedge
    subject: Hedge

    def __str__(self) -> str:
        from ..syntax.printer import format_literal
        return format_literal(self)


Literal = Union[Transform, Call, Cut, Match]


def literal_variables(lit: Literal) -> list[Variable]:
    if isinstance(lit, Transform):
        return variables((lit.strategy,) + lit.lhs + lit.rhs)
    if isinstance(lit, Call):
        return variables(lit.goal)
    if isinstance(lit, Match):
        return variables(lit.pattern + lit.subject)
    return []


@dataclass(frozen=True, slots=True)
class TransformClause:
    head: Transform
    body: tuple[Literal, ...] = ()
    source: SourceRef = field(default_factory=SourceRef, compare=False)

    @property
    def strategy_key(self) -> str | int | None:
        st = self.head.strategy
        return st.head.name if isinstance(st, App) and not isinstance(st.head, Variable) else None


@dataclass(frozen=True, slots=True)
class PredicateClause:
    head: App
    body: tuple[Literal, ...] = ()
    source: SourceRef = field(default_factory=SourceRef, compare=False)

    @property
    def indicator(self) -> tuple[str | int, int]:
        return self.head.head.name, len(self.head.args)


@dataclass(frozen=True, slots=True)
class Abbreviation:
    """``name := strategy``."""
    name: Term
    strategy: Term
    source: SourceRef = field(default_factory=SourceRef, compare=False)

    def expand(self) -> "TransformClause":
        """``name :: s_X ==> s_Y :- strategy :: s_X ==> s_Y``."""
        x, y = Variable(VarKind.SEQUENCE, "s_X"), Variable(VarKind.SEQUENCE, "s_Y")
        return TransformClause(Transform(self.name, (x,), (y,)),
                               (Transform(self.strategy, (x,), (y,)),), self.source)


@dataclass(frozen=True, slots=True)
class Query:
    literals: tuple[Literal, ...]

    def variables(self) -> list[Variable]:
        """Named variables in order of first occurrence."""
        seen: dict[Variable, None] = {}
        for lit in self.literals:
            for v in literal_variables(lit):
                if not v.anonymous:
                    seen.setdefault(v)
        return list(seen)

    def __str__(self) -> str:
        return ", ".join(str(lit) for lit in self.literals)
