"""
Interactive top level.

Input is collected until a line ends an item with ``.``. In the default
answer mode the user types ``;`` after an answer for the next one, and
anything else stops. ``consult(File).``,
``listing.`` and ``halt.`` are handled here; everything else is a query.
"""
from __future__ import annotations

import re
import sys
from pathlib import Path
from typing import Callable

import click

from ..core.errors import HedgeruleError
from ..core.terms import Hedge
from ..engine.service import Session
from ..syntax.printer import format_hedge

Reader = Callable[[str], str]
Echo = Callable[..., None]

_CONSULT = re.compile(r"consult\(\s*'?(?P<path>[^')]+?)'?\s*\)\s*\.\Z")

PROMPT = "?- "
CONTINUATION = "|  "


class ConsoleChannel:
    """Reads ``interactive`` instructions from the same console as the REPL."""

    def __init__(self, read: Reader = input, echo: Echo = click.echo, operators=None):
        self.read = read
        self.echo = echo
        self.operators = operators

    def read_strategy(self, current: Hedge) -> str | None:
        self.echo(f"current: {format_hedge(current, self.operators)}")
        try:
            return self.read("strategy (or finish)> ")
        except EOFError:
            return None

    def show(self, current: Hedge) -> None:
        self.echo(f"=> {format_hedge(current, self.operators)}")

    def notify(self, message: str) -> None:
        self.echo(message)


def _enable_line_editing() -> None:
    if sys.stdin.isatty():
        try:
            import readline  # noqa: F401
        except ImportError:
            pass


class Repl:
    def __init__(self, session: Session, read: Reader = input, echo: Echo = click.echo):
        self.session = session
        self.read = read
        self.echo = echo
        if session.channel is None:
            session.channel = ConsoleChannel(read, echo)

    def run(self) -> None:
        _enable_line_editing()
        buffer = ""
        while True:
            try:
                line = self.read(CONTINUATION if buffer else PROMPT)
            except EOFError:
                self.echo()
                break
            if not line.strip() and not buffer:
                continue
            buffer += line + "\n"
            if not buffer.rstrip().endswith("."):
                continue
            text, buffer = buffer.strip(), ""
            if text == "halt.":
                break
            self.handle(text)

    def handle(self, text: str) -> None:
        try:
            if text == "listing.":
                for clause in self.session.listing():
                    self.echo(clause)
                return
            found = _CONSULT.match(text)
            if found:
                path = Path(found.group("path"))
                self.session.consult_file(path)
                self.echo(f"consulted {path}")
                return
            self.answer(text)
        except HedgeruleError as exc:
            self.echo(f"error: {exc}", err=True)
        except OSError as exc:
            self.echo(f"error: {exc}", err=True)

    def answer(self, text: str) -> None:
        """
        ``first`` prints one answer and ``all`` prints them all without asking.
        In ``interactive`` mode the user types ``;`` after an answer for the next.
        """
        mode = self.session.settings.answer_mode
        ops = self.session.program.operators
        found = False
        for answer in self.session.solve(text):
            self.echo(answer.format(ops))
            found = True
            if mode == "all":
                continue
            if mode == "first" or not self._more():
                self.echo(".")
                return
        self.echo("." if found and mode == "all" else "false.")

    def _more(self) -> bool:
        try:
            return self.read("").strip() == ";"
        except EOFError:
            return False
