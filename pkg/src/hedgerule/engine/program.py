from __future__ import annotations

import warnings
from typing import Iterable

import structlog

from ..core.clauses import Abbreviation, PredicateClause, TransformClause, literal_variables
from ..core.errors import ConsultError, ModeError
from ..core.terms import VarKind, variables
from ..modes.checker import program_check
from ..modes.models import ModeTable
from ..strategies.combinators import is_native
from ..syntax.models import ModeDeclaration, SourceProgram
from ..syntax.operators import OperatorTable
from .builtins import is_builtin
from .models import Program

log = structlog.get_logger(system="hedgerule.consult")


def _check_predicate_clause(clause: PredicateClause) -> None:
    if is_builtin(clause.indicator):
        name, arity = clause.indicator
        raise ConsultError(f"{clause.source}: {name}/{arity} is a builtin predicate and cannot be redefined")
    found = list(variables(clause.head))
    for lit in clause.body:
        found.extend(literal_variables(lit))
    bad = sorted({str(v) for v in found if v.kind is not VarKind.INDIVIDUAL})
    if bad:
        raise ConsultError(f"{clause.source}: predicate clauses only take individual variables, "
                           f"found {', '.join(bad)}")


def _check_transform_clause(clause: TransformClause) -> None:
    key = clause.strategy_key
    if key is None:
        return
    arity = len(clause.head.strategy.args)
    if is_native(key, arity):
        raise ConsultError(f"{clause.source}: {key}/{arity} is a native strategy and cannot be redefined")


def consult(sources: SourceProgram | Iterable[SourceProgram], *, strict: bool = True) -> Program:
    """
    Turn parsed program texts into a runnable program. Abbreviations become
    clauses in place, so clause order is source order across all texts.
    """
    if isinstance(sources, SourceProgram):
        sources = [sources]
    sources = list(sources)
    items = [item for src in sources for item in src.items]
    operators = sources[-1].operators if sources else OperatorTable()
    modes = ModeTable.from_declarations(i for i in items if isinstance(i, ModeDeclaration))

    transform: list[TransformClause] = []
    predicates: list[PredicateClause] = []
    abbreviations: list[Abbreviation] = []
    for item in items:
        if isinstance(item, Abbreviation):
            abbreviations.append(item)
            item = item.expand()
        if isinstance(item, TransformClause):
            _check_transform_clause(item)
            transform.append(item)
        elif isinstance(item, PredicateClause):
            _check_predicate_clause(item)
            predicates.append(item)

    violations = program_check(items, modes)
    if violations:
        if strict:
            raise ModeError(violations)
        for v in violations:
            warnings.warn(f"not well-moded: {v}", RuntimeWarning, stacklevel=2)
            log.warning("mode violation", location=v.location, kind=v.kind, variables=v.variables)

    log.debug("consulted", clauses=len(transform), predicates=len(predicates))
    return Program(tuple(transform), tuple(predicates), tuple(abbreviations), modes, operators)
