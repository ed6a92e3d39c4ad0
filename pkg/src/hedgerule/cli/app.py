from __future__ import annotations

import logging
import sys
import warnings
from pathlib import Path
from typing import Sequence

import click
import structlog

from ..core.config import Settings
from ..core.errors import HedgeruleError
from ..engine.service import Session
from ..modes.models import Violation
from .repl import Repl

EXIT_OK = 0
EXIT_NO_ANSWER = 1
EXIT_ERROR = 2


def configure_logging(trace: bool) -> None:
    """Log events go to standard error so answers on standard output stay clean."""
    structlog.configure(
        processors=[
            structlog.processors.add_log_level,
            structlog.dev.ConsoleRenderer(colors=False),
        ],
        wrapper_class=structlog.make_filtering_bound_logger(logging.INFO if trace else logging.WARNING),
        logger_factory=structlog.PrintLoggerFactory(file=sys.stderr),
        cache_logger_on_first_use=False,
    )


def _consult_all(session: Session, files: Sequence[Path]) -> None:
    for path in files:
        session.consult_file(path)


def run_batch(files: Sequence[Path], query: str, settings: Settings) -> int:
    """Print the answers of ``query`` and return the exit status."""
    session = Session(settings)
    _consult_all(session, files)
    answers = session.solve(query)
    if settings.answer_mode != "all" and settings.max_answers is None:
        answers = (a for _, a in zip(range(1), answers))
    ops = session.program.operators
    count = 0
    for answer in answers:
        if count:
            click.echo()
        click.echo(answer.format(ops))
        count += 1
    if not count:
        click.echo("false.")
        return EXIT_NO_ANSWER
    return EXIT_OK


def run_check(files: Sequence[Path], settings: Settings) -> int:
    session = Session(settings.model_copy(update={"strict": False}))
    violations: list[Violation] = []
    for path in files:
        # each check also covers the files consulted before it
        found = session.check_file(path)
        violations += [v for v in found if v not in violations]
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", RuntimeWarning)
            session.consult_file(path)
    if violations:
        for v in violations:
            click.echo(str(v), err=True)
        return EXIT_ERROR
    click.echo("ok")
    return EXIT_OK


_path = click.Path(exists=True, dir_okay=False, path_type=Path)


@click.command()
@click.argument("files", nargs=-1, type=_path)
@click.option("--consult", "consulted", multiple=True, type=_path, help="Program file to load (repeatable).")
@click.option("--query", "-q", default=None, help="Query to answer, then exit.")
@click.option("--all", "all_answers", is_flag=True, help="Print every answer instead of the first.")
@click.option("--max-answers", type=click.IntRange(min=1), default=None, help="Print at most N answers.")
@click.option("--check", is_flag=True, help="Only check the programs for well-modedness.")
@click.option("--lenient", is_flag=True, help="Warn about mode violations instead of rejecting.")
@click.option("--trace", is_flag=True, help="Log every derivation step to standard error.")
@click.option("--depth-limit", type=click.IntRange(min=1), default=None, help="Abort derivations deeper than N.")
@click.option("--no-prelude", is_flag=True, help="Do not load the rewriting prelude.")
@click.option("--settings", "settings_file", type=_path, default=None, help="Settings file to use.")
def main(files, consulted, query, all_answers, max_answers, check, lenient, trace, depth_limit,
         no_prelude, settings_file):
    """Run hedge transformation programs: answer a query, check programs, or start the REPL."""
    settings = Settings.from_file(settings_file, override=None) if settings_file else Settings.from_file()
    update = {}
    if all_answers:
        update["answer_mode"] = "all"
    if max_answers is not None:
        update["max_answers"] = max_answers
    if lenient:
        update["strict"] = False
    if trace:
        update["trace"] = True
    if depth_limit is not None:
        update["depth_limit"] = depth_limit
    if no_prelude:
        update["load_prelude"] = False
    settings = settings.model_copy(update=update)
    configure_logging(settings.trace)

    programs = [*consulted, *files]
    try:
        if check:
            sys.exit(run_check(programs, settings))
        if query is not None:
            sys.exit(run_batch(programs, query, settings))
        session = Session(settings)
        _consult_all(session, programs)
    except HedgeruleError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_ERROR)
    except OSError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_ERROR)
    Repl(session).run()


if __name__ == "__main__":
    main()
