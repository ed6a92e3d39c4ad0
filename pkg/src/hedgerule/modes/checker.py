"""
Well-modedness of queries and clauses.

A literal's input variables must already be bound by the outputs of the
literals to its left (for a clause body, the head inputs count as bound from
the start). Under that discipline every selected transform literal has a
ground strategy and a ground input hedge, so the engine only ever matches.
"""
from __future__ import annotations

from typing import Iterable

import structlog

from ..core.clauses import (Abbreviation, Call, Literal, PredicateClause, Query,
                            Transform, TransformClause)
from ..core.terms import Variable, variables
from ..syntax.models import ModeDeclaration, SourceProgram
from .models import ModeTable, Violation, ViolationKind

log = structlog.get_logger(system="hedgerule.modes")


def _named(vs: Iterable[Variable]) -> set[Variable]:
    return {v for v in vs if not v.anonymous}


def _ordered(vs: Iterable[Variable], keep: set[Variable]) -> tuple[str, ...]:
    seen: dict[str, None] = {}
    for v in vs:
        if v in keep:
            seen.setdefault(str(v))
    return tuple(seen)


def literal_modes(lit: Literal, table: ModeTable) -> tuple[list[Variable], list[Variable]] | None:
    """Input and output variables of ``lit``; ``None`` for an unmoded predicate."""
    if isinstance(lit, Transform):
        return variables((lit.strategy,) + lit.lhs), variables(lit.rhs)
    if isinstance(lit, Call):
        modes = table.lookup(*lit.indicator)
        if modes is None:
            return None
        ins, outs = modes
        args = lit.goal.args
        return (variables(tuple(a for i, a in enumerate(args, 1) if i in ins)),
                variables(tuple(a for i, a in enumerate(args, 1) if i in outs)))
    return [], []


class _Check:
    def __init__(self, location: str, table: ModeTable):
        self.location = location
        self.table = table
        self.found: list[Violation] = []

    def report(self, index: int, kind: ViolationKind, names: tuple[str, ...]) -> None:
        if names:
            self.found.append(Violation(location=self.location, literal_index=index,
                                        kind=kind, variables=names))

    def sequence(self, literals: Iterable[Literal], bound: set[Variable],
                 strategy_scope: set[Variable] | None) -> set[Variable]:
        """Walk the literals left to right; returns the variables bound at the end."""
        for index, lit in enumerate(literals, 1):
            modes = literal_modes(lit, self.table)
            if modes is None:
                name, arity = lit.indicator
                self.report(index, "unknown-predicate", (f"{name}/{arity}",))
                continue
            ins, outs = modes
            if isinstance(lit, Transform):
                st_vars = variables(lit.strategy)
                if strategy_scope is None:
                    self.report(index, "nonground-strategy", _ordered(st_vars, set(st_vars)))
                else:
                    escaped = set(st_vars) - strategy_scope
                    self.report(index, "strategy-var-escape", _ordered(st_vars, escaped))
            self.report(index, "unbound-input", _ordered(ins, set(ins) - bound))
            if isinstance(lit, Transform) and lit.negative:
                self.report(index, "unbound-negative-output", _ordered(outs, _named(outs) - bound))
            else:
                bound |= _named(outs)
        return bound


def check_query(query: Query, table: ModeTable | None = None) -> list[Violation]:
    check = _Check("query", table or ModeTable())
    check.sequence(query.literals, set(), None)
    return check.found


def check_clause(clause: TransformClause | PredicateClause,
                 table: ModeTable | None = None) -> list[Violation]:
    table = table or ModeTable()
    check = _Check(str(clause.source), table)
    if isinstance(clause, TransformClause):
        head_in, head_out = literal_modes(clause.head, table)
        scope = set(variables(clause.head.strategy))
    else:
        modes = literal_modes(Call(clause.head), table)
        if modes is None:
            name, arity = clause.indicator
            check.report(0, "unknown-predicate", (f"{name}/{arity}",))
            return check.found
        head_in, head_out = modes
        scope = set(head_in)
    bound = check.sequence(clause.body, _named(head_in), scope)
    check.report(0, "unbound-output", _ordered(head_out, _named(head_out) - bound))
    return check.found


def program_check(program: SourceProgram | Iterable, table: ModeTable | None = None) -> list[Violation]:
    """
    Check every transform clause (abbreviations after expansion) and every
    predicate clause whose predicate is called from a transform clause body.
    """
    items = list(program.items if isinstance(program, SourceProgram) else program)
    if table is None:
        table = ModeTable.from_declarations(i for i in items if isinstance(i, ModeDeclaration))
    transform = [i.expand() if isinstance(i, Abbreviation) else i
                 for i in items if isinstance(i, (TransformClause, Abbreviation))]
    called = {lit.indicator for c in transform for lit in c.body if isinstance(lit, Call)}
    predicates = [i for i in items if isinstance(i, PredicateClause) and i.indicator in called]
    found: list[Violation] = []
    for clause in transform + predicates:
        found.extend(check_clause(clause, table))
    if found:
        log.info("mode check failed", violations=len(found))
    return found
