"""
First-order unification for predicate clauses.

Predicate clauses only carry individual variables, so syntactic unification
with an occurs check is enough; the result is returned fully resolved.
"""
from __future__ import annotations

from ..core.substitution import IDENTITY, Substitution, apply_term
from ..core.terms import App, Hedge, Term, VarKind, Variable


def _deref(t: Term, binds: dict[Variable, Term]) -> Term:
    while isinstance(t, Variable) and t in binds:
        t = binds[t]
    return t


def _occurs(v: Variable, t: Term, binds: dict[Variable, Term]) -> bool:
    t = _deref(t, binds)
    if t == v:
        return True
    if isinstance(t, App):
        return any(_occurs(v, a, binds) for a in t.args)
    return False


def _unify(a: Term, b: Term, binds: dict[Variable, Term]) -> bool:
    a, b = _deref(a, binds), _deref(b, binds)
    if a == b:
        return True
    for x, y in ((a, b), (b, a)):
        if isinstance(x, Variable):
            if x.kind is not VarKind.INDIVIDUAL:
                raise ValueError(f"cannot unify {x.kind.name.lower()} variable {x}")
            if _occurs(x, y, binds):
                return False
            binds[x] = y
            return True
    if not (isinstance(a, App) and isinstance(b, App)):
        raise ValueError("only individual variables and plain terms can be unified")
    if isinstance(a.head, Variable) or isinstance(b.head, Variable):
        raise ValueError("function variables cannot be unified")
    if a.head != b.head or len(a.args) != len(b.args):
        return False
    return all(_unify(x, y, binds) for x, y in zip(a.args, b.args))


def unify(left: Hedge, right: Hedge, sigma: Substitution = IDENTITY) -> Substitution | None:
    """Most general unifier of two equally long hedges of terms, or ``None``."""
    if len(left) != len(right):
        return None
    binds: dict[Variable, Term] = dict(sigma)
    for a, b in zip(left, right):
        if not _unify(a, b, binds):
            return None
    resolved: dict[Variable, Term] = {}
    for v in binds:
        t = binds[v]
        while True:
            nxt = apply_term(binds, t)
            if nxt == t:
                break
            t = nxt
        resolved[v] = t
    return Substitution(resolved)
