"""
Native strategy combinators.

Combinators only rewrite the selected literal into other literals and leave
the search to the engine. ``first_one``, ``first_all``, ``nf`` and
``interactive`` depend on whether a sub-strategy has a result at all; their
steps end the sub-derivation with a ``Commit``, which prunes the remaining
alternatives of the step on the engine's own stack. A cut inside the
sub-derivation never reaches the caller.
"""
from __future__ import annotations

import structlog

from ..core.clauses import Match, Transform
from ..core.errors import BuiltinError, InteractionError, ParseError
from ..core.substitution import Substitution
from ..core.terms import (App, CApp, HOLE, Hedge, Symbol, Term, VarKind, Variable,
                          replace_at, subterm_at)
from ..matching.matcher import hole_positions
from .base import Commit, Effect, Step, Strategy

log = structlog.get_logger(system="hedgerule.strategies")


def _output(rhs: Hedge, produced: Hedge) -> Step:
    return Step((Match(rhs, produced),))


class Identity(Strategy):
    name = "id"
    max_arity = 0

    def expand(self, run, strategy, lhs, rhs):
        yield _output(rhs, lhs)


class Compose(Strategy):
    name = "compose"
    min_arity = 2

    def expand(self, run, strategy, lhs, rhs):
        first, *others = strategy.args
        rest = others[0] if len(others) == 1 else App(strategy.head, tuple(others))
        middle = run.fresh(VarKind.SEQUENCE)
        yield Step((Transform(first, lhs, (middle,)), Transform(rest, (middle,), rhs)))


class Choice(Strategy):
    name = "choice"
    min_arity = 1

    def expand(self, run, strategy, lhs, rhs):
        for st in strategy.args:
            yield Step((Transform(st, lhs, rhs),))


class FirstOne(Strategy):
    name = "first_one"
    min_arity = 1

    def expand(self, run, strategy, lhs, rhs):
        for st in strategy.args:
            out = run.fresh(VarKind.SEQUENCE)
            yield Step((Transform(st, lhs, (out,)), Commit(), Match(rhs, (out,))))


class FirstAll(Strategy):
    name = "first_all"
    min_arity = 1

    def expand(self, run, strategy, lhs, rhs):
        for st in strategy.args:
            out = run.fresh(VarKind.SEQUENCE)
            yield Step((Transform(st, lhs, (out,)), Commit(soft=True), Match(rhs, (out,))))


class NormalForm(Strategy):
    name = "nf"
    min_arity = max_arity = 1

    def expand(self, run, strategy, lhs, rhs):
        (st,) = strategy.args
        out = run.fresh(VarKind.SEQUENCE)
        yield Step((Transform(st, lhs, (out,)), Commit(soft=True), Transform(strategy, (out,), rhs)))
        # reached only when st has no result at all
        yield _output(rhs, lhs)


class Iterate(Strategy):
    name = "iterate"
    min_arity = max_arity = 2

    def expand(self, run, strategy, lhs, rhs):
        st, count = strategy.args
        if not (isinstance(count, App) and count.head.is_number and not count.args) or count.head.name < 0:
            raise BuiltinError(f"iterate expects a natural number of steps, got {count}")
        n = count.head.name
        if n == 0:
            yield _output(rhs, lhs)
            return
        if n == 1:
            yield Step((Transform(st, lhs, rhs),))
            return
        middle = run.fresh(VarKind.SEQUENCE)
        again = App(strategy.head, (st, App(Symbol(n - 1))))
        yield Step((Transform(st, lhs, (middle,)), Transform(again, (middle,), rhs)))


class _ElementWise(Strategy):
    min_arity = max_arity = 1
    image_kind: VarKind

    def expand(self, run, strategy, lhs, rhs):
        (st,) = strategy.args
        images = [run.fresh(self.image_kind) for _ in lhs]
        steps = tuple(Transform(st, (t,), (image,)) for t, image in zip(lhs, images))
        yield Step(steps + (Match(rhs, tuple(images)),))


class MapOne(_ElementWise):
    """Each element goes to exactly one term."""
    name = "map1"
    image_kind = VarKind.INDIVIDUAL


class Map(_ElementWise):
    """Each element goes to a hedge."""
    name = "map"
    image_kind = VarKind.SEQUENCE


class Rewrite(Strategy):
    name = "rewrite"
    min_arity = max_arity = 1

    def expand(self, run, strategy, lhs, rhs):
        if len(lhs) != 1 or isinstance(lhs[0], Variable):
            return
        (st,), (term,) = strategy.args, lhs
        for pos in hole_positions(term, run.traversal):
            context = run.fresh(VarKind.CONTEXT)
            contractum = run.fresh(VarKind.INDIVIDUAL)
            yield Step((Transform(st, (subterm_at(term, pos),), (contractum,)),
                        Match(rhs, (CApp(context, contractum),))),
                       Substitution({context: replace_at(term, pos, HOLE)}))


FINISH = "finish"


class Interactive(Strategy):
    """
    Asks the channel for one strategy at a time and applies its first result.

    Each accepted step continues as a fresh ``interactive`` on the new hedge,
    so the session runs on the engine's stack like any other derivation.
    """
    name = "interactive"
    max_arity = 0

    def expand(self, run, strategy, lhs, rhs):
        channel = run.channel
        if channel is None:
            raise InteractionError("interactive needs an interaction channel (use the REPL)")
        while True:
            text = channel.read_strategy(lhs)
            if text is None:
                break
            text = text.strip()
            if text.endswith("."):
                text = text[:-1].rstrip()
            if not text:
                continue
            if text == FINISH:
                break
            try:
                st = run.parse_strategy(text)
            except ParseError as exc:
                channel.notify(f"cannot read strategy: {exc}")
                continue
            log.debug("interactive step", strategy=text)
            out = run.fresh(VarKind.SEQUENCE)
            yield Step((Transform(st, lhs, (out,)), Commit(), Effect(channel.show, (out,)),
                        Transform(strategy, (out,), rhs)))
            channel.notify(f"{text} failed; the hedge is unchanged")
        yield _output(rhs, lhs)


NATIVES: dict[str, Strategy] = {s.name: s for s in (
    Identity(), Compose(), Choice(), FirstOne(), FirstAll(), NormalForm(),
    Iterate(), MapOne(), Map(), Rewrite(), Interactive(),
)}


def native_for(strategy: Term) -> Strategy | None:
    """The native strategy a ground strategy term denotes, if any."""
    if not isinstance(strategy, App) or isinstance(strategy.head, Variable):
        return None
    native = NATIVES.get(strategy.head.name)
    if native is None or not native.accepts(len(strategy.args)):
        return None
    return native


def is_native(name, arity: int) -> bool:
    native = NATIVES.get(name)
    return native is not None and native.accepts(arity)
