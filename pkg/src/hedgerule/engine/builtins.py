"""Builtin predicates: arithmetic, comparison, ``true``, ``fail``, ``write`` and ``nl``."""
from __future__ import annotations

import operator
from typing import TYPE_CHECKING, Callable, Iterator

from ..core.errors import BuiltinError
from ..core.substitution import IDENTITY, Substitution
from ..core.terms import App, Hedge, Symbol, Term, VarKind, Variable, is_ground
from ..matching.unify import unify

if TYPE_CHECKING:
    from .solver import Derivation

Builtin = Callable[["Derivation", Hedge], Iterator[Substitution]]


def _floordiv(a: int, b: int) -> int:
    if b == 0:
        raise BuiltinError("evaluation error: division by zero")
    return a // b


def _mod(a: int, b: int) -> int:
    if b == 0:
        raise BuiltinError("evaluation error: modulo by zero")
    return a % b


_BINARY: dict[str, Callable[[int, int], int]] = {
    "+": operator.add,
    "-": operator.sub,
    "*": operator.mul,
    "//": _floordiv,
    "mod": _mod,
}

_COMPARE: dict[str, Callable[[int, int], bool]] = {
    "<": operator.lt,
    ">": operator.gt,
    "=<": operator.le,
    ">=": operator.ge,
    "=:=": operator.eq,
    "=\\=": operator.ne,
}


def evaluate(t: Term) -> int:
    if isinstance(t, Variable):
        raise BuiltinError(f"instantiation error: {t} is unbound in an arithmetic expression")
    if not isinstance(t, App) or isinstance(t.head, Variable):
        raise BuiltinError(f"type error: {t} is not an arithmetic expression")
    name, args = t.head.name, t.args
    if not args and isinstance(name, int):
        return name
    if any(isinstance(a, Variable) and a.kind is VarKind.SEQUENCE for a in args):
        raise BuiltinError(f"instantiation error: unbound sequence variable in {t}")
    if len(args) == 2 and name in _BINARY:
        return _BINARY[name](evaluate(args[0]), evaluate(args[1]))
    if len(args) == 1 and name == "-":
        return -evaluate(args[0])
    raise BuiltinError(f"type error: {t} is not a number or arithmetic expression")


def _is(run: Derivation, args: Hedge) -> Iterator[Substitution]:
    target, expression = args
    value = App(Symbol(evaluate(expression)))
    if isinstance(target, Variable):
        yield Substitution({target: value})
    elif is_ground(target):
        if target == value:
            yield IDENTITY
    else:
        found = unify((target,), (value,))
        if found is not None:
            yield found


def _comparison(test: Callable[[int, int], bool]):
    def compare(run: Derivation, args: Hedge) -> Iterator[Substitution]:
        if test(evaluate(args[0]), evaluate(args[1])):
            yield IDENTITY
    return compare


def _true(run: Derivation, args: Hedge) -> Iterator[Substitution]:
    yield IDENTITY


def _fail(run: Derivation, args: Hedge) -> Iterator[Substitution]:
    return iter(())


def _write(run: Derivation, args: Hedge) -> Iterator[Substitution]:
    from ..syntax.printer import format_term
    (t,) = args
    run.output(format_term(t, run.operators))
    yield IDENTITY


def _nl(run: Derivation, args: Hedge) -> Iterator[Substitution]:
    run.output("\n")
    yield IDENTITY


BUILTINS: dict[tuple[str, int], Builtin] = {
    ("is", 2): _is,
    **{(name, 2): _comparison(test) for name, test in _COMPARE.items()},
    ("true", 0): _true,
    ("fail", 0): _fail,
    ("write", 1): _write,
    ("nl", 0): _nl,
}


def is_builtin(indicator: tuple) -> bool:
    return indicator in BUILTINS
