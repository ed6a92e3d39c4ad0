import warnings
from itertools import islice
from pathlib import Path
from typing import Callable, Iterator

import structlog

from ..core.clauses import Abbreviation, PredicateClause, Query, TransformClause
from ..core.config import Settings
from ..core.errors import ModeError
from ..modes.checker import check_query, program_check
from ..modes.models import Violation
from ..syntax.models import SourceProgram
from ..syntax.printer import format_clause
from ..syntax.reader import parse_program, parse_query
from .models import Answer, Program
from .program import consult
from .protocols import InteractionChannel
from .solver import Solver

log = structlog.get_logger(system="hedgerule.session")


class Session:
    """
    Consulted programs plus the settings to run queries against them. A
    failed consult leaves the current program untouched.
    """

    def __init__(self, settings: Settings | None = None, *,
                 channel: InteractionChannel | None = None,
                 output: Callable[[str], None] | None = None):
        self.settings = settings or Settings()
        self.channel = channel
        self.output = output
        self.sources: list[SourceProgram] = []
        self.program = Program()
        self._prelude = 0

        for path in self.settings.prelude_files():
            self.consult_file(path)
        self._prelude = len(self.sources)

    def consult_text(self, text: str, origin: str = "<input>") -> Program:
        source = parse_program(text, origin, self.program.operators)
        self.program = consult([*self.sources, source], strict=self.settings.strict)
        self.sources.append(source)
        return self.program

    def consult_file(self, path: str | Path) -> Program:
        path = Path(path)
        log.debug("consulting", path=str(path))
        return self.consult_text(path.read_text(encoding="utf-8"), path.name)

    def check_file(self, path: str | Path) -> list[Violation]:
        """Mode violations of a program file, read against the current operators."""
        path = Path(path)
        source = parse_program(path.read_text(encoding="utf-8"), path.name, self.program.operators)
        return program_check([item for src in (*self.sources, source) for item in src.items])

    def check(self) -> list[Violation]:
        return program_check([item for src in self.sources for item in src.items])

    def query(self, text: str) -> Query:
        query = parse_query(text, self.program.operators)
        violations = check_query(query, self.program.modes)
        if violations:
            if self.settings.strict:
                raise ModeError(violations)
            for v in violations:
                warnings.warn(f"not well-moded: {v}", RuntimeWarning, stacklevel=2)
        return query

    def solve(self, query: str | Query) -> Iterator[Answer]:
        if isinstance(query, str):
            query = self.query(query)
        solver = Solver(self.program, self.settings, channel=self.channel, output=self.output)
        answers = solver.solve(query)
        if self.settings.max_answers is not None:
            answers = islice(answers, self.settings.max_answers)
        return answers

    def listing(self) -> list[str]:
        """User clauses in source order; the prelude is left out."""
        ops = self.program.operators
        return [format_clause(item, ops)
                for src in self.sources[self._prelude:]
                for item in src.items
                if isinstance(item, (TransformClause, PredicateClause, Abbreviation))]
