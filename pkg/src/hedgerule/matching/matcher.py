"""
Hedge matching with individual, sequence, function and context variables.

The subject is always ground, so every matching problem has finitely many
solutions. They are produced lazily and in a fixed order:

    * the leftmost pattern element is decomposed first,
    * sequence variables take shorter hedges before longer ones,
    * context variables place their hole in pre-order (leftmost-outermost),
      or in post-order when the traversal is switched to ``innermost``.

Anonymous variables drive choice points but never record a binding, so two
derivations can end in the same substitution; each matcher is emitted once.
"""
from __future__ import annotations

from typing import Iterator, Literal

from ..core.substitution import IDENTITY, Substitution
from ..core.terms import (App, CApp, HOLE, Hedge, Position, Term, VarKind,
                          Variable, replace_at, subterm_at)

Traversal = Literal["outermost", "innermost"]


def hole_positions(t: Term, traversal: Traversal = "outermost") -> list[Position]:
    """Positions of ``t`` in the order context variables visit them."""
    out: list[Position] = []

    def visit(s: Term, pos: Position):
        if traversal == "outermost":
            out.append(pos)
        if isinstance(s, App):
            for i, a in enumerate(s.args, 1):
                visit(a, pos + (i,))
        if traversal == "innermost":
            out.append(pos)

    visit(t, ())
    return out


def match_hedge(pattern: Hedge, subject: Hedge, sigma: Substitution = IDENTITY,
                traversal: Traversal = "outermost") -> Iterator[Substitution]:
    """All matchers of ``pattern`` against the ground ``subject``, extending ``sigma``."""
    seen: set[Substitution] = set()
    for found in _Matcher(traversal).hedge(pattern, subject, sigma):
        if found not in seen:
            seen.add(found)
            yield found


def match_term(pattern: Term, subject: Term, sigma: Substitution = IDENTITY,
               traversal: Traversal = "outermost") -> Iterator[Substitution]:
    return match_hedge((pattern,), (subject,), sigma, traversal)


def _is_seq(e) -> bool:
    return isinstance(e, Variable) and e.kind is VarKind.SEQUENCE


class _Matcher:
    __slots__ = ("traversal",)

    def __init__(self, traversal: Traversal):
        self.traversal = traversal

    def hedge(self, ps: Hedge, ss: Hedge, sigma: Substitution) -> Iterator[Substitution]:
        # fixed[i]: number of non-sequence elements in ps[i:]
        fixed = [0] * (len(ps) + 1)
        seqs = [False] * (len(ps) + 1)
        for i in range(len(ps) - 1, -1, -1):
            is_seq = _is_seq(ps[i])
            fixed[i] = fixed[i + 1] + (not is_seq)
            seqs[i] = seqs[i + 1] or is_seq
        if fixed[0] > len(ss) or (not seqs[0] and fixed[0] != len(ss)):
            return iter(())
        return self._elements(ps, 0, ss, 0, sigma, fixed, seqs)

    def _elements(self, ps, i, ss, j, sigma, fixed, seqs) -> Iterator[Substitution]:
        if i == len(ps):
            if j == len(ss):
                yield sigma
            return
        left = len(ss) - j
        if fixed[i] > left or (not seqs[i] and fixed[i] != left):
            return
        p = ps[i]
        if _is_seq(p):
            bound = None if p.anonymous else sigma.get(p)
            if bound is not None:
                n = len(bound)
                if ss[j:j + n] == bound:
                    yield from self._elements(ps, i + 1, ss, j + n, sigma, fixed, seqs)
                return
            # with no sequence variable to the right the length is forced
            lengths = range(left - fixed[i + 1] + 1) if seqs[i + 1] else (left - fixed[i + 1],)
            for k in lengths:
                nxt = sigma if p.anonymous else sigma.extend(p, ss[j:j + k])
                yield from self._elements(ps, i + 1, ss, j + k, nxt, fixed, seqs)
            return
        if left <= 0:
            return
        for nxt in self.term(p, ss[j], sigma):
            yield from self._elements(ps, i + 1, ss, j + 1, nxt, fixed, seqs)

    def term(self, p: Term, t: Term, sigma: Substitution) -> Iterator[Substitution]:
        if isinstance(p, Variable):
            if p.anonymous:
                yield sigma
                return
            bound = sigma.get(p)
            if bound is None:
                yield sigma.extend(p, t)
            elif bound == t:
                yield sigma
        elif isinstance(p, App):
            if not isinstance(t, App):
                return
            head = p.head
            if isinstance(head, Variable):
                if not head.anonymous:
                    bound = sigma.get(head)
                    if bound is None:
                        sigma = sigma.extend(head, t.head)
                    elif bound != t.head:
                        return
            elif head != t.head:
                return
            if not p.args and not t.args:
                yield sigma
            else:
                yield from self.hedge(p.args, t.args, sigma)
        elif isinstance(p, CApp):
            bound = None if p.var.anonymous else sigma.get(p.var)
            if bound is not None:
                yield from self._inside(bound, p.arg, t, sigma)
                return
            for pos in hole_positions(t, self.traversal):
                nxt = sigma if p.var.anonymous else sigma.extend(p.var, replace_at(t, pos, HOLE))
                yield from self.term(p.arg, subterm_at(t, pos), nxt)

    def _inside(self, ctx: Term, p: Term, t: Term, sigma: Substitution) -> Iterator[Substitution]:
        """Match ``p`` against the part of ``t`` sitting under the hole of ``ctx``."""
        if ctx == HOLE:
            yield from self.term(p, t, sigma)
            return
        if not isinstance(t, App) or ctx.head != t.head or len(ctx.args) != len(t.args):
            return
        differing = [(c, s) for c, s in zip(ctx.args, t.args) if c != s]
        # only the argument holding the hole may differ
        if len(differing) == 1:
            c, s = differing[0]
            yield from self._inside(c, p, s, sigma)
