"""
Depth-first, leftmost-literal evaluation of queries.

The machine keeps an explicit stack of choice points, each an iterator of
states (pending goals plus bindings). Advancing the top iterator resumes
the most recent alternative; an exhausted iterator is popped. Every goal
frame remembers the stack height at the activation of its clause, and a
cut truncates the stack back to that height.

Combinators that test a sub-strategy for a result run it on this same stack
and end it with a ``Commit`` frame whose barrier is the height of their own
choice point, so nested derivations never nest host calls.

Bindings are never pushed into pending goals eagerly. A goal is
instantiated when it is selected, which is where the matcher needs its
subject to be ground.
"""
from __future__ import annotations

import itertools
import sys
import warnings
from dataclasses import dataclass
from typing import Callable, Iterator

import structlog

from ..core.clauses import Call, Cut, Literal, Match, PredicateClause, Query, Transform, TransformClause
from ..core.config import Settings
from ..core.errors import BuiltinError, DepthLimitExceeded
from ..core.substitution import IDENTITY, Substitution, apply_any
from ..core.terms import App, Symbol, Term, VarKind, Variable, is_ground, map_variables, variables
from ..matching.matcher import match_hedge
from ..matching.unify import unify
from ..strategies.base import Commit, Effect
from ..strategies.combinators import native_for
from ..syntax.printer import format_literal
from ..syntax.reader import parse_term
from .builtins import BUILTINS
from .models import Answer, Program
from .protocols import InteractionChannel

log = structlog.get_logger(system="hedgerule.engine")

_FAIL = Call(App(Symbol("fail")))


@dataclass(frozen=True, slots=True)
class Frame:
    literal: Literal | Commit | Effect
    barrier: int
    depth: int


@dataclass(frozen=True, slots=True)
class State:
    goals: tuple[Frame, ...]
    sigma: Substitution


def resolve(sigma: Substitution, x):
    """Apply ``sigma`` until nothing changes; predicate-clause bindings may chain."""
    while True:
        nxt = apply_any(sigma, x)
        if nxt == x:
            return x
        x = nxt


def _rename_literal(lit: Literal, fn) -> Literal:
    if isinstance(lit, Transform):
        return Transform(map_variables(lit.strategy, fn), map_variables(lit.lhs, fn),
                         map_variables(lit.rhs, fn), lit.negative)
    if isinstance(lit, Call):
        return Call(map_variables(lit.goal, fn))
    if isinstance(lit, Match):
        return Match(map_variables(lit.pattern, fn), map_variables(lit.subject, fn))
    return lit


def _instantiate(lit: Literal, sigma: Substitution) -> Literal:
    if isinstance(lit, Transform):
        return Transform(resolve(sigma, lit.strategy), resolve(sigma, lit.lhs),
                         resolve(sigma, lit.rhs), lit.negative)
    if isinstance(lit, Call):
        return Call(resolve(sigma, lit.goal))
    if isinstance(lit, Match):
        return Match(resolve(sigma, lit.pattern), resolve(sigma, lit.subject))
    return lit


class Derivation:
    """What native strategies and builtins may use of the running solver."""
    __slots__ = ("solver", "depth")

    def __init__(self, solver: "Solver", depth: int):
        self.solver = solver
        self.depth = depth

    def fresh(self, kind: VarKind) -> Variable:
        return self.solver.fresh(kind)

    def parse_strategy(self, text: str) -> Term:
        return parse_term(text, self.solver.program.operators)

    @property
    def channel(self) -> InteractionChannel | None:
        return self.solver.channel

    @property
    def traversal(self) -> str:
        return self.solver.settings.traversal

    @property
    def operators(self):
        return self.solver.program.operators

    def output(self, text: str) -> None:
        self.solver.output(text)


def _stdout(text: str) -> None:
    sys.stdout.write(text)
    sys.stdout.flush()


class Solver:
    def __init__(self, program: Program, settings: Settings | None = None, *,
                 channel: InteractionChannel | None = None,
                 output: Callable[[str], None] | None = None):
        self.program = program
        self.settings = settings or Settings()
        self.channel = channel
        self.output = output or _stdout
        self._counter = itertools.count(1)

    def fresh(self, kind: VarKind) -> Variable:
        return Variable(kind, f"{kind.prefix}#{next(self._counter)}")

    def solve(self, query: Query) -> Iterator[Answer]:
        """Answers of ``query``, lazily, in derivation order."""
        names = query.variables()
        frames = tuple(Frame(lit, 0, 0) for lit in query.literals)
        try:
            for sigma in self._run(frames, IDENTITY):
                yield Answer(tuple((v, resolve(sigma, sigma[v])) for v in names if v in sigma))
        except RecursionError as exc:
            # only terms nested deeper than the host stack get here
            raise DepthLimitExceeded(sys.getrecursionlimit(), "term nesting") from exc

    def _run(self, goals: tuple[Frame, ...], sigma: Substitution) -> Iterator[Substitution]:
        limit = self.settings.depth_limit
        stack: list[Iterator[State]] = [iter((State(goals, sigma),))]
        while stack:
            try:
                state = next(stack[-1], None)
            except BuiltinError as exc:
                self._abort(str(exc))
                stack.pop()
                continue
            if state is None:
                stack.pop()
                continue
            if not state.goals:
                yield state.sigma
                continue
            frame, rest = state.goals[0], state.goals[1:]
            if isinstance(frame.literal, Cut):
                self._trace(frame, state.sigma, "cut")
                del stack[frame.barrier:]
                stack.append(iter((State(rest, state.sigma),)))
                continue
            if isinstance(frame.literal, Commit):
                self._trace(frame, state.sigma, "commit")
                if frame.literal.soft:
                    stack[frame.barrier].close()
                else:
                    del stack[frame.barrier:]
                stack.append(iter((State(rest, state.sigma),)))
                continue
            if isinstance(frame.literal, Effect):
                frame.literal.action(resolve(state.sigma, frame.literal.subject))
                stack.append(iter((State(rest, state.sigma),)))
                continue
            if limit is not None and frame.depth > limit:
                raise DepthLimitExceeded(limit)
            stack.append(self._expand(frame, rest, state.sigma, len(stack)))

    def _expand(self, frame: Frame, rest, sigma: Substitution, height: int) -> Iterator[State]:
        lit = frame.literal
        if isinstance(lit, Match):
            return self._match(frame, rest, sigma)
        if isinstance(lit, Transform):
            if lit.negative:
                return self._negative(frame, rest, sigma, height)
            return self._transform(frame, rest, sigma, height)
        return self._call(frame, rest, sigma, height)

    def _match(self, frame, rest, sigma) -> Iterator[State]:
        lit = frame.literal
        pattern, subject = resolve(sigma, lit.pattern), resolve(sigma, lit.subject)
        if not is_ground(subject):
            self._nonground(frame, sigma, "produced hedge is not ground")
            return
        self._trace(frame, sigma, "match")
        for found in match_hedge(pattern, subject, IDENTITY, self.settings.traversal):
            yield State(rest, sigma.update(found))

    def _transform(self, frame, rest, sigma, height) -> Iterator[State]:
        lit = frame.literal
        strategy, lhs = resolve(sigma, lit.strategy), resolve(sigma, lit.lhs)
        if not is_ground((strategy,) + lhs):
            self._nonground(frame, sigma, "strategy or input hedge is not ground")
            return
        depth = frame.depth + 1
        native = native_for(strategy)
        if native is not None:
            self._trace(frame, sigma, f"native {native.name}")
            for step in native.expand(Derivation(self, frame.depth), strategy, lhs, lit.rhs):
                body = tuple(Frame(b, height if isinstance(b, Commit) else frame.barrier, depth)
                             for b in step.literals)
                yield State(body + rest, sigma.update(step.bindings))
            return
        subject = (strategy,) + lhs
        for k, clause in self.program.clauses_for(strategy):
            head, body = self._rename(clause)
            pattern = (head.strategy,) + head.lhs
            for j, found in enumerate(match_hedge(pattern, subject, IDENTITY, self.settings.traversal), 1):
                self._trace(frame, sigma, f"clause {k} matcher {j}")
                goals = tuple(Frame(b, height, depth) for b in body)
                goals += (Frame(Match(lit.rhs, head.rhs), height, depth),)
                yield State(goals + rest, sigma.update(found))

    def _negative(self, frame, rest, sigma, height) -> Iterator[State]:
        lit = _instantiate(frame.literal, sigma)
        if not is_ground((lit.strategy,) + lit.lhs):
            self._nonground(frame, sigma, "strategy or input hedge of a negative literal is not ground")
            return
        if self.settings.debug_checks and any(not v.anonymous for v in variables(lit.rhs)):
            self._nonground(frame, sigma, "negative literal has named unbound variables")
            return
        self._trace(frame, sigma, "naf enter")
        depth = frame.depth + 1
        yield State((Frame(lit.positive(), height, depth), Frame(Commit(), height, depth),
                     Frame(_FAIL, height, depth)), sigma)
        # the positive literal had no result
        self._trace(frame, sigma, "naf exit")
        yield State(rest, sigma)

    def _call(self, frame, rest, sigma, height) -> Iterator[State]:
        lit = frame.literal
        goal = resolve(sigma, lit.goal)
        builtin = BUILTINS.get(lit.indicator)
        if builtin is not None:
            self._trace(frame, sigma, "builtin")
            for found in builtin(Derivation(self, frame.depth), goal.args):
                yield State(rest, sigma.update(found))
            return
        candidates = self.program.predicates_for(lit.indicator)
        if not candidates:
            name, arity = lit.indicator
            self._abort(f"unknown predicate {name}/{arity}")
            return
        for k, clause in candidates:
            head, body = self._rename(clause)
            try:
                found = unify(goal.args, head.args)
            except ValueError as exc:
                self._abort(f"{goal}: {exc}")
                return
            if found is None:
                continue
            self._trace(frame, sigma, f"clause {k}")
            yield State(tuple(Frame(b, height, frame.depth + 1) for b in body) + rest, sigma.update(found))

    def _rename(self, clause: TransformClause | PredicateClause):
        suffix = f"#{next(self._counter)}"

        def fn(v: Variable) -> Variable:
            return Variable(v.kind, v.name + suffix, v.anonymous)

        if isinstance(clause, TransformClause):
            head = _rename_literal(clause.head, fn)
        else:
            head = map_variables(clause.head, fn)
        return head, tuple(_rename_literal(b, fn) for b in clause.body)

    def _trace(self, frame: Frame, sigma: Substitution, action: str) -> None:
        if self.settings.trace:
            text = format_literal(_instantiate(frame.literal, sigma), self.program.operators)
            log.info("step", depth=frame.depth, literal=text, action=action)

    def _nonground(self, frame: Frame, sigma: Substitution, reason: str) -> None:
        text = format_literal(_instantiate(frame.literal, sigma), self.program.operators)
        message = f"{reason}: {text}"
        if self.settings.debug_checks:
            raise AssertionError(message)
        self._abort(message)

    @staticmethod
    def _abort(message: str) -> None:
        warnings.warn(f"branch aborted: {message}", RuntimeWarning, stacklevel=3)
        log.warning("branch aborted", reason=message)
