"""
Text rendering of terms, hedges, literals and substitutions.

Output reads back through the reader to an equal value: infix operators are
printed with the parentheses their priorities require, prefix and postfix
operator terms fall back to functional notation, and symbols that would not
read back as themselves are quoted.
"""
from __future__ import annotations

import re
from typing import Iterable, Mapping

from ..core.terms import CApp, Hedge, Symbol, Term, VarKind, Variable
from .operators import OperatorTable

_PLAIN = re.compile(r"[a-z][A-Za-z0-9_]*\Z")
_SYMBOLIC = re.compile(r"[+\-*/\\^<>=~:?@#&$]+\Z")
_RESERVED = frozenset({"eps"})
_SOLO = frozenset({"!", ";"})

_default_operators = OperatorTable()


def _needs_quotes(name: str) -> bool:
    if name in _RESERVED:
        return True
    if _PLAIN.match(name):
        return name[:2] in {k.prefix for k in VarKind}
    return not (_SYMBOLIC.match(name) or name in _SOLO)


def _quote(name: str) -> str:
    escaped = name.replace("\\", "\\\\").replace("'", "\\'").replace("\n", "\\n").replace("\t", "\\t")
    return f"'{escaped}'"


def format_symbol(sym: Symbol) -> str:
    if sym.is_number:
        return str(sym.name)
    return _quote(sym.name) if _needs_quotes(sym.name) else sym.name


def _element(e, ops: OperatorTable, max_prec: int) -> str:
    if isinstance(e, Variable) and e.kind is VarKind.SEQUENCE:
        return str(e)
    return _term(e, ops, max_prec)


def _arguments(args: Hedge, ops: OperatorTable) -> str:
    return ", ".join(_element(a, ops, 999) for a in args)


def _is_plain_term(e) -> bool:
    return not (isinstance(e, Variable) and e.kind is VarKind.SEQUENCE)


def _term(t: Term, ops: OperatorTable, max_prec: int) -> str:
    if isinstance(t, Variable):
        return str(t)
    if isinstance(t, CApp):
        return f"{t.var}({_term(t.arg, ops, 999)})"
    if isinstance(t.head, Variable):
        return f"{t.head}({_arguments(t.args, ops)})" if t.args else str(t.head)
    head = t.head
    if not t.args:
        text = format_symbol(head)
        if not head.is_number and ops.is_operator(head.name) and max_prec < 999 and not text.startswith("'"):
            return f"({text})"
        return text
    name = head.name
    if (isinstance(name, str) and name != "," and len(t.args) == 2
            and all(_is_plain_term(a) for a in t.args)):
        op = ops.infix(name)
        if op is not None:
            left_max, right_max = op.argument_limits()
            text = f"{_term(t.args[0], ops, left_max)} {name} {_term(t.args[1], ops, right_max)}"
            return f"({text})" if op.priority > max_prec else text
    return f"{format_symbol(head)}({_arguments(t.args, ops)})"


def format_term(t: Term, operators: OperatorTable | None = None, max_prec: int = 999) -> str:
    return _term(t, operators or _default_operators, max_prec)


def format_hedge(h: Hedge, operators: OperatorTable | None = None, max_prec: int = 999) -> str:
    """``eps`` when empty, a lone element bare, otherwise a parenthesised list."""
    ops = operators or _default_operators
    if not h:
        return "eps"
    if len(h) == 1:
        return _element(h[0], ops, max_prec)
    return f"({_arguments(h, ops)})"


def format_value(value, operators: OperatorTable | None = None) -> str:
    if isinstance(value, tuple):
        return format_hedge(value, operators)
    if isinstance(value, Symbol):
        return format_symbol(value)
    return format_term(value, operators)


def format_substitution(sigma: Mapping, operators: OperatorTable | None = None) -> str:
    pairs = ", ".join(f"{v} = {format_value(val, operators)}" for v, val in sigma.items())
    return "{" + pairs + "}"


def format_literal(lit, operators: OperatorTable | None = None) -> str:
    from ..core.clauses import Call, Cut, Match, Transform

    ops = operators or _default_operators
    if isinstance(lit, Transform):
        arrow = "=\\=>" if lit.negative else "==>"
        return (f"{_term(lit.strategy, ops, 989)} :: {format_hedge(lit.lhs, ops, 979)} "
                f"{arrow} {format_hedge(lit.rhs, ops, 979)}")
    if isinstance(lit, Call):
        return _term(lit.goal, ops, 999)
    if isinstance(lit, Cut):
        return "!"
    if isinstance(lit, Match):
        return f"{format_hedge(lit.pattern, ops, 699)} <- {format_hedge(lit.subject, ops, 699)}"
    return str(lit)


def format_clause(clause, operators: OperatorTable | None = None) -> str:
    ops = operators or _default_operators
    if not hasattr(clause, "head"):
        return f"{_term(clause.name, ops, 1199)} := {_term(clause.strategy, ops, 1199)}."
    head = format_literal(clause.head, ops) if hasattr(clause.head, "strategy") else _term(clause.head, ops, 1199)
    if not clause.body:
        return f"{head}."
    body = ",\n    ".join(format_literal(lit, ops) for lit in clause.body)
    return f"{head} :-\n    {body}."


def format_answer(bindings: Iterable[tuple[Variable, object]],
                  operators: OperatorTable | None = None) -> str:
    """``Var = value`` lines, or ``true.`` when nothing is bound."""
    lines = [f"{v} = {format_value(val, operators)}" for v, val in bindings]
    return "\n".join(lines) if lines else "true."
