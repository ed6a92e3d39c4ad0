from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, field_validator

from ..core.errors import ConsultError

Fixity = Literal["xfx", "xfy", "yfx", "fy", "fx", "xf", "yf"]

PREFIX = ("fy", "fx")
INFIX = ("xfx", "xfy", "yfx")
POSTFIX = ("xf", "yf")


class OperatorDirective(BaseModel, frozen=True):
    priority: int
    type: Fixity
    name: str

    @field_validator("priority")
    @classmethod
    def _priority_ok(cls, v: int) -> int:
        if not 1 <= v <= 1200:
            raise ValueError("operator priority must lie in [1, 1200]")
        return v

    @property
    def kind(self) -> str:
        if self.type in PREFIX:
            return "prefix"
        return "infix" if self.type in INFIX else "postfix"

    def argument_limits(self) -> tuple[int, int]:
        """Highest priority allowed for the left and right argument."""
        p = self.priority
        left = p if self.type[0] == "y" else p - 1
        right = p if self.type[-1] == "y" else p - 1
        return left, right


DEFAULT_OPERATORS: tuple[OperatorDirective, ...] = tuple(
    OperatorDirective(priority=p, type=t, name=n) for p, t, n in (
        (1200, "xfx", ":-"),
        (1200, "fx", ":-"),
        (1200, "xfx", ":="),
        (1000, "xfy", ","),
        (990, "xfx", "::"),
        (980, "xfx", "==>"),
        (980, "xfx", "=\\=>"),
        (700, "xfx", "->"),
        (700, "xfx", "is"),
        (700, "xfx", "<"),
        (700, "xfx", ">"),
        (700, "xfx", "=<"),
        (700, "xfx", ">="),
        (700, "xfx", "=:="),
        (700, "xfx", "=\\="),
        (500, "yfx", "+"),
        (500, "yfx", "-"),
        (400, "yfx", "*"),
        (400, "yfx", "//"),
        (400, "yfx", "mod"),
        (200, "fy", "-"),
    ))

# Operators the reader relies on to recognise clauses; redefining them would
# change what a program means.
_STRUCTURAL = frozenset({":-", ":=", ",", "::", "==>", "=\\=>"})


class OperatorTable:
    """Prefix, infix and postfix operator definitions in effect while reading."""

    def __init__(self, directives: tuple[OperatorDirective, ...] = DEFAULT_OPERATORS):
        self._ops: dict[tuple[str, str], OperatorDirective] = {}
        for d in directives:
            self._ops[(d.name, d.kind)] = d

    def copy(self) -> "OperatorTable":
        table = OperatorTable(())
        table._ops = dict(self._ops)
        return table

    def add(self, directive: OperatorDirective) -> None:
        key = (directive.name, directive.kind)
        current = self._ops.get(key)
        if current == directive:
            return
        if directive.name in _STRUCTURAL:
            raise ConsultError(f"operator {directive.name!r} is reserved and cannot be redefined")
        if current is not None:
            raise ConsultError(f"op({directive.priority}, {directive.type}, {directive.name}) "
                               f"conflicts with op({current.priority}, {current.type}, {current.name})")
        if directive.kind == "infix" and (directive.name, "postfix") in self._ops \
                or directive.kind == "postfix" and (directive.name, "infix") in self._ops:
            raise ConsultError(f"operator {directive.name!r} cannot be both infix and postfix")
        self._ops[key] = directive

    def prefix(self, name: str) -> OperatorDirective | None:
        return self._ops.get((name, "prefix"))

    def infix(self, name: str) -> OperatorDirective | None:
        return self._ops.get((name, "infix"))

    def postfix(self, name: str) -> OperatorDirective | None:
        return self._ops.get((name, "postfix"))

    def is_operator(self, name: str) -> bool:
        return any((name, k) in self._ops for k in ("prefix", "infix", "postfix"))

    def directives(self) -> list[OperatorDirective]:
        return list(self._ops.values())
