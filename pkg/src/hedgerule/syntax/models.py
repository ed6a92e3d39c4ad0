from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal, Union

from pydantic import BaseModel, field_validator

from ..core.clauses import Abbreviation, PredicateClause, TransformClause
from .operators import OperatorDirective, OperatorTable


class ModeDeclaration(BaseModel, frozen=True):
    """``:- mode(name(+, -, ...)).``"""
    name: str
    modes: tuple[Literal["+", "-"], ...]
    source: str = ""

    @field_validator("name")
    @classmethod
    def _name_ok(cls, v: str) -> str:
        if not v:
            raise ValueError("a mode declaration needs a predicate name")
        return v

    @property
    def arity(self) -> int:
        return len(self.modes)

    def inputs(self) -> frozenset[int]:
        return frozenset(i for i, m in enumerate(self.modes, 1) if m == "+")

    def outputs(self) -> frozenset[int]:
        return frozenset(i for i, m in enumerate(self.modes, 1) if m == "-")


Item = Union[TransformClause, PredicateClause, Abbreviation, OperatorDirective, ModeDeclaration]


@dataclass
class SourceProgram:
    """Items of one program text, in source order."""
    items: list[Item] = field(default_factory=list)
    origin: str = "<input>"
    operators: OperatorTable = field(default_factory=OperatorTable)

    def transform_clauses(self) -> list[TransformClause]:
        return [i for i in self.items if isinstance(i, TransformClause)]

    def abbreviations(self) -> list[Abbreviation]:
        return [i for i in self.items if isinstance(i, Abbreviation)]

    def __len__(self) -> int:
        return len(self.items)
