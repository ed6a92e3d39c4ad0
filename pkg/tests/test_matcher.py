"""
Matching order and correctness. The random suites compare the matcher
against a brute-force search over every candidate binding the subject
offers, and check that each emitted matcher reproduces the subject.
"""
from __future__ import annotations

import itertools
import random

import pytest

from hedgerule.core.substitution import Substitution, apply_subst
from hedgerule.core.terms import (App, CApp, EPS, Symbol, Term, VarKind, Variable, const,
                                  map_variables, replace_at, subterm_at, variables)
from hedgerule.matching.matcher import hole_positions, match_hedge, match_term
from hedgerule.syntax.printer import format_substitution
from hedgerule.syntax.reader import parse_hedge, parse_term


def _var(kind: VarKind, name: str) -> Variable:
    return Variable(kind, f"{kind.prefix}{name}")


def _matchers(pattern: str, subject: str, traversal="outermost") -> list[Substitution]:
    return list(match_hedge(parse_hedge(pattern), parse_hedge(subject), traversal=traversal))


def test_context_variable_matches_in_three_ways():
    found = _matchers("c_X(f(s_Y))", "g(f(a, b), h(f(a), f))")
    cx, sy = _var(VarKind.CONTEXT, "X"), _var(VarKind.SEQUENCE, "Y")
    assert set(found) == {
        Substitution({cx: parse_term("g(hole, h(f(a), f))"), sy: parse_hedge("(a, b)")}),
        Substitution({cx: parse_term("g(f(a, b), h(hole, f))"), sy: parse_hedge("a")}),
        Substitution({cx: parse_term("g(f(a, b), h(f(a), hole))"), sy: EPS}),
    }
    # pre-order hole placement
    assert [m[cx] for m in found] == [
        parse_term("g(hole, h(f(a), f))"),
        parse_term("g(f(a, b), h(hole, f))"),
        parse_term("g(f(a, b), h(f(a), hole))"),
    ]


def test_function_and_sequence_variables():
    found = _matchers("(s_X, f_F(i_X, a, s_), s_Y)", "(a, f(b), g(a, b), h(b, a))")
    assert found == [Substitution({
        _var(VarKind.SEQUENCE, "X"): parse_hedge("(a, f(b), g(a, b))"),
        _var(VarKind.FUNCTION, "F"): Symbol("h"),
        _var(VarKind.INDIVIDUAL, "X"): const("b"),
        _var(VarKind.SEQUENCE, "Y"): EPS,
    })]


def test_sequence_variables_take_shortest_hedges_first():
    found = _matchers("(s_X, s_Y)", "(a, b)")
    sx = _var(VarKind.SEQUENCE, "X")
    assert [m[sx] for m in found] == [EPS, parse_hedge("a"), parse_hedge("(a, b)")]


def test_repeated_variables_must_agree():
    assert len(_matchers("(s_1, i_x, s_2, i_x, s_3)", "(a, b, a, f(a))")) == 1
    assert _matchers("f(i_X, i_X)", "f(a, b)") == []


def test_anonymous_variables_bind_nothing_and_never_duplicate():
    found = _matchers("(s_, a, s_)", "(a, a, a)")
    assert found == [Substitution()]


def test_constant_matches_function_variable_with_no_arguments():
    found = _matchers("f_F(s_Args)", "a")
    assert found == [Substitution({_var(VarKind.FUNCTION, "F"): Symbol("a"),
                                   _var(VarKind.SEQUENCE, "Args"): EPS})]


def test_bound_context_variable_reuses_its_context():
    found = _matchers("(c_C(a), c_C(b))", "(f(a, g(a)), f(b, g(a)))")
    assert [str(m[_var(VarKind.CONTEXT, "C")]) for m in found] == ["f(hole, g(a))"]


def test_innermost_traversal_visits_holes_in_post_order():
    t = parse_term("h(f(a), b)")
    assert hole_positions(t) == [(), (1,), (1, 1), (2,)]
    assert hole_positions(t, "innermost") == [(1, 1), (1,), (2,), ()]
    found = list(match_term(parse_term("c_X(i_Y)"), t, traversal="innermost"))
    assert [str(m[_var(VarKind.INDIVIDUAL, "Y")]) for m in found] == ["a", "f(a)", "b", "h(f(a), b)"]


def test_no_match_for_length_mismatch():
    assert _matchers("(a, b)", "(a, b, c)") == []
    assert _matchers("(s_X, a, b)", "a") == []


# random suites

_SYMBOLS = ("a", "b", "f", "g", "h")


def _random_subject(rng: random.Random, depth: int) -> Term:
    name = rng.choice(_SYMBOLS)
    if depth == 0 or rng.random() < 0.35:
        return const(name)
    return App(Symbol(name), tuple(_random_subject(rng, depth - 1) for _ in range(rng.randint(0, 3))))


class _Abstractor:
    """Turns a subject into a pattern by replacing parts with variables."""

    def __init__(self, rng: random.Random, max_vars: int, anonymous: bool):
        self.rng = rng
        self.max_vars = max_vars
        self.anonymous = anonymous
        self.made: list[Variable] = []
        self.anonymous_made = 0

    def _new(self, kind: VarKind) -> Variable:
        if self.anonymous and self.rng.random() < 0.2:
            self.anonymous_made += 1
            return Variable(kind, kind.prefix, anonymous=True)
        same = [v for v in self.made if v.kind is kind]
        if same and self.rng.random() < 0.15:
            return self.rng.choice(same)
        v = Variable(kind, f"{kind.prefix}V{len(self.made)}")
        self.made.append(v)
        return v

    def _room(self) -> bool:
        return len(self.made) + self.anonymous_made < self.max_vars and self.rng.random() < 0.3

    def hedge(self, h: tuple) -> tuple:
        out: list = []
        i = 0
        while i < len(h):
            if self._room():
                k = self.rng.randint(0, len(h) - i)
                out.append(self._new(VarKind.SEQUENCE))
                i += k
                continue
            out.append(self.term(h[i]))
            i += 1
        if self._room():
            out.append(self._new(VarKind.SEQUENCE))
        return tuple(out)

    def term(self, t: Term) -> Term:
        if self._room():
            return self._new(VarKind.INDIVIDUAL)
        if self._room():
            positions = [p for p in hole_positions(t)]
            pos = self.rng.choice(positions)
            return CApp(self._new(VarKind.CONTEXT), self.term(subterm_at(t, pos)))
        head = self._new(VarKind.FUNCTION) if self._room() else t.head
        return App(head, self.hedge(t.args))


def _case(seed: int, max_vars: int, anonymous: bool):
    rng = random.Random(seed)
    subject = tuple(_random_subject(rng, 3) for _ in range(rng.randint(1, 3)))
    source = subject
    if rng.random() < 0.2:
        source = tuple(_random_subject(rng, 3) for _ in range(rng.randint(1, 3)))
    pattern = _Abstractor(rng, max_vars, anonymous).hedge(source)
    return pattern, subject


def _subterms(h: tuple):
    for t in h:
        yield t
        yield from _subterms(t.args)


def _argument_lists(h: tuple):
    yield h
    for t in h:
        yield from _argument_lists(t.args)


def _candidates(var: Variable, subject: tuple) -> list:
    if var.kind is VarKind.INDIVIDUAL:
        return list(dict.fromkeys(_subterms(subject)))
    if var.kind is VarKind.FUNCTION:
        return list(dict.fromkeys(t.head for t in _subterms(subject)))
    if var.kind is VarKind.SEQUENCE:
        slices = {EPS: None}
        for args in _argument_lists(subject):
            for i in range(len(args)):
                for j in range(i + 1, len(args) + 1):
                    slices.setdefault(args[i:j])
        return list(slices)
    contexts: dict = {}
    for t in _subterms(subject):
        for pos in hole_positions(t):
            contexts.setdefault(replace_at(t, pos, parse_term("hole")))
    return list(contexts)


def _oracle(pattern: tuple, subject: tuple) -> set[Substitution] | None:
    vs = variables(pattern)
    pools = [_candidates(v, subject) for v in vs]
    size = 1
    for pool in pools:
        size *= len(pool)
    if size > 8_000:
        return None
    found = set()
    for combo in itertools.product(*pools):
        sigma = Substitution(zip(vs, combo))
        try:
            if apply_subst(sigma, pattern) == subject:
                found.add(sigma)
        except ValueError:
            continue
    return found


@pytest.mark.parametrize("block", range(20))
def test_every_matcher_reproduces_the_subject(block):
    for seed in range(block * 500, (block + 1) * 500):
        pattern, subject = _case(seed, max_vars=6, anonymous=False)
        for sigma in match_hedge(pattern, subject):
            assert apply_subst(sigma, pattern) == subject, (seed, format_substitution(sigma))


def _named(pattern: tuple) -> tuple[tuple, list[Variable]]:
    """Give every anonymous occurrence a name of its own."""
    counter = itertools.count()
    renamed: list[Variable] = []

    def fn(v: Variable) -> Variable:
        if not v.anonymous:
            return v
        w = Variable(v.kind, f"{v.kind.prefix}Anon{next(counter)}")
        renamed.append(w)
        return w

    return map_variables(pattern, fn), renamed


@pytest.mark.parametrize("block", range(50))
def test_matcher_agrees_with_brute_force(block):
    checked = 0
    for seed in range(block * 200, (block + 1) * 200):
        pattern, subject = _case(10_000 + seed, max_vars=3, anonymous=True)
        named, renamed = _named(pattern)
        expected = _oracle(named, subject)
        if expected is None:
            continue
        keep = [v for v in variables(named) if v not in renamed]
        expected = {sigma.restrict(keep) for sigma in expected}
        found = list(match_hedge(pattern, subject))
        assert len(found) == len(set(found)), seed
        assert set(found) == expected, seed
        checked += 1
    assert checked
