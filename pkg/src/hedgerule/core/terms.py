"""
Symbols, variables, terms and hedges.

    t ::= i_X | hole | f(h) | f_X(h) | c_X(t)
    h ::= t | s_X | eps | h, h

Hedges are plain tuples kept flat: nested tuples are spliced on construction
and the empty tuple is ``eps``. Every value here is immutable and compares
structurally, so derivations share sub-structure freely.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterator, Union

from .errors import MalformedContextError


class VarKind(str, Enum):
    INDIVIDUAL = "i"
    SEQUENCE = "s"
    FUNCTION = "f"
    CONTEXT = "c"

    @property
    def prefix(self) -> str:
        return f"{self.value}_"


@dataclass(frozen=True, slots=True)
class Symbol:
    name: str | int

    @property
    def is_number(self) -> bool:
        return isinstance(self.name, int)

    def __str__(self) -> str:
        from ..syntax.printer import format_symbol
        return format_symbol(self)


@dataclass(frozen=True, slots=True)
class Variable:
    kind: VarKind
    name: str
    anonymous: bool = False

    def __str__(self) -> str:
        return self.kind.prefix if self.anonymous else self.name


@dataclass(frozen=True, slots=True)
class App:
    """``f(h)`` or ``f_X(h)``; a constant ``a`` is ``a(eps)``."""
    head: Symbol | Variable
    args: tuple = ()

    def __post_init__(self):
        if isinstance(self.head, Variable) and self.head.kind is not VarKind.FUNCTION:
            raise ValueError(f"only function variables may head a term, got {self.head!r}")
        if not _is_flat(self.args):
            object.__setattr__(self, "args", hedge(self.args))
        if self.head == HOLE_SYMBOL and self.args:
            raise ValueError("hole never takes arguments")

    def __str__(self) -> str:
        from ..syntax.printer import format_term
        return format_term(self)


@dataclass(frozen=True, slots=True)
class CApp:
    """``c_X(t)``: a context variable applied to exactly one term."""
    var: Variable
    arg: "Term"

    def __post_init__(self):
        if self.var.kind is not VarKind.CONTEXT:
            raise ValueError(f"expected a context variable, got {self.var!r}")
        if isinstance(self.arg, tuple) or (isinstance(self.arg, Variable)
                                           and self.arg.kind is not VarKind.INDIVIDUAL):
            raise ValueError("a context variable takes exactly one term")

    def __str__(self) -> str:
        from ..syntax.printer import format_term
        return format_term(self)


Term = Union[Variable, App, CApp]
Element = Union[Term, Variable]
Hedge = tuple
Position = tuple[int, ...]


def _is_flat(h) -> bool:
    return type(h) is tuple and not any(type(e) is tuple for e in h)


def hedge(*parts) -> Hedge:
    """Build a canonical hedge; tuples and lists among ``parts`` are spliced."""
    out: list = []

    def push(p):
        if isinstance(p, (tuple, list)):
            for q in p:
                push(q)
        else:
            out.append(p)

    for part in parts:
        push(part)
    return tuple(out)


HOLE_SYMBOL = Symbol("hole")
HOLE = App(HOLE_SYMBOL)
EPS: Hedge = ()


def hedge_concat(h1: Hedge, h2: Hedge) -> Hedge:
    if not h1:
        return h2
    if not h2:
        return h1
    return h1 + h2


def const(name: str | int) -> App:
    return App(Symbol(name))


def walk(x) -> Iterator[Element]:
    """Pre-order walk over every element of a term or hedge."""
    stack = list(reversed(x)) if isinstance(x, tuple) else [x]
    while stack:
        e = stack.pop()
        yield e
        if isinstance(e, App):
            stack.extend(reversed(e.args))
        elif isinstance(e, CApp):
            stack.append(e.arg)


def variables(x) -> list[Variable]:
    """Variables of a term or hedge, in order of first occurrence."""
    seen: dict[Variable, None] = {}
    for e in walk(x):
        if isinstance(e, Variable):
            seen.setdefault(e)
        elif isinstance(e, App) and isinstance(e.head, Variable):
            seen.setdefault(e.head)
        elif isinstance(e, CApp):
            seen.setdefault(e.var)
    return list(seen)


def is_ground(x) -> bool:
    for e in walk(x):
        if isinstance(e, (Variable, CApp)) or (isinstance(e, App) and isinstance(e.head, Variable)):
            return False
    return True


def hole_count(x) -> int:
    return sum(1 for e in walk(x) if e == HOLE)


def is_context(t) -> bool:
    return not isinstance(t, tuple) and hole_count(t) == 1


def subterm_at(t: Term, pos: Position) -> Term:
    for i in pos:
        t = t.args[i - 1]
    return t


def replace_at(t: Term, pos: Position, new: Term) -> Term:
    if not pos:
        return new
    i, rest = pos[0], pos[1:]
    args = t.args
    return App(t.head, args[:i - 1] + (replace_at(args[i - 1], rest, new),) + args[i:])


def _hole_path(t) -> Position | None:
    if t == HOLE:
        return ()
    if isinstance(t, App):
        for i, a in enumerate(t.args, 1):
            sub = _hole_path(a)
            if sub is not None:
                return (i,) + sub
    elif isinstance(t, CApp):
        raise MalformedContextError("context variables cannot occur inside a context value")
    return None


def apply_context(ctx: Term, t: Term) -> Term:
    """Replace the single hole of ``ctx`` by ``t``."""
    holes = hole_count(ctx)
    if holes != 1:
        raise MalformedContextError(f"a context needs exactly one hole, found {holes}")
    return replace_at(ctx, _hole_path(ctx), t)


def map_variables(x, fn: Callable[[Variable], Variable]):
    """Rename every variable of a term or hedge through ``fn``."""
    if isinstance(x, tuple):
        return tuple(map_variables(e, fn) for e in x)
    if isinstance(x, Variable):
        return fn(x)
    if isinstance(x, App):
        head = fn(x.head) if isinstance(x.head, Variable) else x.head
        if not x.args and head is x.head:
            return x
        return App(head, tuple(map_variables(e, fn) for e in x.args))
    if isinstance(x, CApp):
        return CApp(fn(x.var), map_variables(x.arg, fn))
    return x
