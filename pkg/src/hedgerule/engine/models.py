from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterator

from ..core.clauses import Abbreviation, PredicateClause, TransformClause
from ..core.substitution import Binding
from ..core.terms import App, Term, Variable
from ..modes.models import ModeTable
from ..syntax.operators import OperatorTable


@dataclass(frozen=True, slots=True)
class Answer:
    """Bindings of a query's named variables, in order of first occurrence."""
    bindings: tuple[tuple[Variable, Binding], ...] = ()

    def __getitem__(self, key: str | Variable) -> Binding:
        for var, value in self.bindings:
            if var == key or var.name == key:
                return value
        raise KeyError(key)

    def __contains__(self, key) -> bool:
        return any(var == key or var.name == key for var, _ in self.bindings)

    def as_dict(self) -> dict[str, Binding]:
        return {var.name: value for var, value in self.bindings}

    def format(self, operators: OperatorTable | None = None) -> str:
        from ..syntax.printer import format_answer
        return format_answer(self.bindings, operators)

    def __str__(self) -> str:
        return self.format()


class Program:
    """
    A consulted program. Transform clauses are indexed by the top symbol of
    their head strategy; clauses whose head strategy is a variable are tried
    together with every group, each group kept in source order.
    """

    def __init__(self,
                 transform_clauses: tuple[TransformClause, ...] = (),
                 predicate_clauses: tuple[PredicateClause, ...] = (),
                 abbreviations: tuple[Abbreviation, ...] = (),
                 modes: ModeTable | None = None,
                 operators: OperatorTable | None = None):
        self.transform_clauses = tuple(transform_clauses)
        self.predicate_clauses = tuple(predicate_clauses)
        self.abbreviations = tuple(abbreviations)
        self.modes = modes or ModeTable()
        self.operators = operators or OperatorTable()

        self._by_strategy: dict[str | int, list[tuple[int, TransformClause]]] = {}
        self._wildcard: list[tuple[int, TransformClause]] = []
        for k, clause in enumerate(self.transform_clauses, 1):
            key = clause.strategy_key
            if key is None:
                self._wildcard.append((k, clause))
            else:
                self._by_strategy.setdefault(key, []).append((k, clause))

        self._by_predicate: dict[tuple, list[tuple[int, PredicateClause]]] = {}
        for k, clause in enumerate(self.predicate_clauses, 1):
            self._by_predicate.setdefault(clause.indicator, []).append((k, clause))

    def clauses_for(self, strategy: Term) -> Iterator[tuple[int, TransformClause]]:
        """Candidate clauses for a ground strategy term, numbered and in source order."""
        if isinstance(strategy, App) and not isinstance(strategy.head, Variable):
            group = self._by_strategy.get(strategy.head.name, [])
        else:
            group = []
        if not self._wildcard:
            return iter(group)
        return heapq.merge(group, self._wildcard, key=lambda pair: pair[0])

    def predicates_for(self, indicator: tuple) -> list[tuple[int, PredicateClause]]:
        return self._by_predicate.get(indicator, [])

    def __len__(self) -> int:
        return len(self.transform_clauses) + len(self.predicate_clauses)

