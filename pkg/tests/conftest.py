from __future__ import annotations

from pathlib import Path
from typing import Callable

import pytest
import structlog

from hedgerule.core.config import Settings
from hedgerule.engine.service import Session
from hedgerule.syntax.printer import format_value

ROOT = Path(__file__).resolve().parents[1]
PRELUDE_DIR = ROOT / "assets" / "prelude"
PROGRAMS_DIR = ROOT / "assets" / "programs"


def program_path(name: str) -> Path:
    return PROGRAMS_DIR / f"{name}.rholog"


@pytest.fixture(autouse=True)
def _reset_structlog():
    yield
    # the CLI points structlog at a stream that CliRunner closes afterwards
    structlog.reset_defaults()


@pytest.fixture
def settings() -> Settings:
    return Settings(prelude_dir=PRELUDE_DIR, programs_dir=PROGRAMS_DIR)


@pytest.fixture
def session(settings: Settings) -> Session:
    return Session(settings)


@pytest.fixture
def load(session: Session) -> Callable[..., Session]:
    """Consult shipped programs by name into the session fixture."""
    def _load(*names: str) -> Session:
        for name in names:
            session.consult_file(program_path(name))
        return session
    return _load


@pytest.fixture
def values(session: Session) -> Callable[[str, str], list[str]]:
    """Printed bindings of one query variable, one per answer, in answer order."""
    def _values(query: str, name: str) -> list[str]:
        ops = session.program.operators
        return [format_value(answer[name], ops) for answer in session.solve(query)]
    return _values
