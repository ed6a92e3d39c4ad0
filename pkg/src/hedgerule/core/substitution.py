from __future__ import annotations

from typing import Iterable, Iterator, Mapping, Union

from .terms import (App, CApp, HOLE, Hedge, Symbol, Term, VarKind, Variable,
                    apply_context)

Binding = Union[Term, Hedge, Symbol, Variable]


class Substitution(Mapping[Variable, Binding]):
    """
    Finite map from variables to their images. Unmapped variables are the
    identity (for a context variable: the variable applied to the hole).
    Instances never change; ``extend`` returns a new substitution.
    """
    __slots__ = ("_map", "_hash")

    def __init__(self, bindings: Mapping[Variable, Binding] | Iterable[tuple[Variable, Binding]] = ()):
        self._map: dict[Variable, Binding] = dict(bindings)
        self._hash: int | None = None

    def __getitem__(self, var: Variable) -> Binding:
        return self._map[var]

    def __contains__(self, var) -> bool:
        return var in self._map

    def get(self, var, default=None):
        return self._map.get(var, default)

    def __iter__(self) -> Iterator[Variable]:
        return iter(self._map)

    def __len__(self) -> int:
        return len(self._map)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._map.items()))
        return self._hash

    def __eq__(self, other) -> bool:
        if isinstance(other, Substitution):
            return self._map == other._map
        return NotImplemented

    def __repr__(self) -> str:
        return f"Substitution({self._map!r})"

    def __str__(self) -> str:
        from ..syntax.printer import format_substitution
        return format_substitution(self)

    def extend(self, var: Variable, value: Binding) -> "Substitution":
        new = dict(self._map)
        new[var] = value
        return Substitution(new)

    def update(self, other: Mapping[Variable, Binding]) -> "Substitution":
        if not other:
            return self
        if not self._map:
            return other if isinstance(other, Substitution) else Substitution(other)
        return Substitution({**self._map, **other})

    def restrict(self, variables: Iterable[Variable]) -> "Substitution":
        return Substitution((v, self._map[v]) for v in variables if v in self._map)

    def image(self, var: Variable) -> Binding:
        """The image of ``var``, with the implicit identity for unmapped ones."""
        if var in self._map:
            return self._map[var]
        if var.kind is VarKind.CONTEXT:
            return CApp(var, HOLE)
        if var.kind is VarKind.SEQUENCE:
            return (var,)
        return var


IDENTITY = Substitution()


def apply_subst(sigma: Mapping[Variable, Binding], h: Hedge) -> Hedge:
    """Simultaneous application of ``sigma`` to a hedge."""
    if not sigma:
        return h
    out: list = []
    for e in h:
        if isinstance(e, Variable) and e.kind is VarKind.SEQUENCE:
            out.extend(sigma.get(e, (e,)))
        else:
            out.append(apply_term(sigma, e))
    return tuple(out)


def apply_term(sigma: Mapping[Variable, Binding], t: Term) -> Term:
    if not sigma:
        return t
    if isinstance(t, Variable):
        return sigma.get(t, t)
    if isinstance(t, App):
        head = sigma.get(t.head, t.head) if isinstance(t.head, Variable) else t.head
        if not t.args:
            return t if head is t.head else App(head)
        return App(head, apply_subst(sigma, t.args))
    if isinstance(t, CApp):
        arg = apply_term(sigma, t.arg)
        ctx = sigma.get(t.var)
        return CApp(t.var, arg) if ctx is None else apply_context(ctx, arg)
    return t


def apply_any(sigma: Mapping[Variable, Binding], x):
    return apply_subst(sigma, x) if isinstance(x, tuple) else apply_term(sigma, x)
