from __future__ import annotations

import pytest
from click.testing import CliRunner

from hedgerule.cli.app import main
from hedgerule.cli.repl import CONTINUATION, PROMPT, Repl
from hedgerule.engine import Session

from conftest import program_path

REWRITE_OUT = "rewrite_out(strat) :: h(f(f(a)), f(a)) ==> i_X"


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()


def test_batch_query_prints_every_answer(runner):
    result = runner.invoke(main, ["--consult", str(program_path("strat")), "--query", REWRITE_OUT, "--all"])
    assert result.exit_code == 0
    assert result.stdout == ("i_X = h(g(f(a)), f(a))\n\n"
                             "i_X = h(a, f(a))\n\n"
                             "i_X = h(f(f(a)), g(a))\n")


def test_batch_query_prints_the_first_answer_by_default(runner):
    result = runner.invoke(main, [str(program_path("strat")), "-q", REWRITE_OUT])
    assert result.exit_code == 0
    assert result.stdout == "i_X = h(g(f(a)), f(a))\n"


def test_max_answers(runner):
    result = runner.invoke(main, [str(program_path("strat")), "-q", REWRITE_OUT, "--max-answers", "2"])
    assert result.exit_code == 0
    assert result.stdout.count("i_X = ") == 2


def test_query_without_answers(runner):
    result = runner.invoke(main, ["-q", "id :: a ==> b"])
    assert result.exit_code == 1
    assert result.stdout == "false.\n"


def test_ground_query_prints_true(runner):
    result = runner.invoke(main, ["-q", "id :: a ==> a"])
    assert result.exit_code == 0
    assert result.stdout == "true.\n"


def test_check_accepts_the_prover(runner):
    result = runner.invoke(main, ["--check", str(program_path("prover"))])
    assert result.exit_code == 0
    assert result.stdout == "ok\n"


def test_check_reports_violations(runner, tmp_path):
    bad = tmp_path / "bad.rholog"
    bad.write_text("bad :: i_X ==> i_Y.\n")
    result = runner.invoke(main, ["--check", str(bad)])
    assert result.exit_code == 2
    assert "unbound-output i_Y" in result.stderr


def test_check_reports_each_violation_once(runner, tmp_path):
    bad = tmp_path / "bad.rholog"
    bad.write_text("bad :: i_X ==> i_Y.\n")
    good = tmp_path / "good.rholog"
    good.write_text("good :: i_X ==> i_X.\n")
    result = runner.invoke(main, ["--check", str(bad), str(good)])
    assert result.exit_code == 2
    assert result.stderr.count("unbound-output i_Y") == 1


def test_syntax_error_exits_with_status_two(runner, tmp_path):
    bad = tmp_path / "broken.rholog"
    bad.write_text("str :: ) ==> a.\n")
    result = runner.invoke(main, [str(bad), "-q", "id :: a ==> i_X"])
    assert result.exit_code == 2
    assert result.stderr.startswith("error: line 1")


def test_mode_error_in_query(runner):
    result = runner.invoke(main, ["-q", "id :: i_X ==> i_Y"])
    assert result.exit_code == 2
    assert "unbound-input" in result.stderr


def test_lenient_run_aborts_the_branch(runner):
    result = runner.invoke(main, ["--lenient", "-q", "id :: i_X ==> i_Y"])
    assert result.exit_code == 1
    assert result.stdout == "false.\n"


def test_depth_limit_is_reported(runner, tmp_path):
    loop = tmp_path / "loop.rholog"
    loop.write_text("loop :: i_X ==> i_Y :- loop :: i_X ==> i_Y.\n")
    result = runner.invoke(main, [str(loop), "--depth-limit", "20", "-q", "loop :: a ==> i_Y"])
    assert result.exit_code == 2
    assert "depth limit 20" in result.stderr


def test_settings_file_is_used_without_the_local_override(runner, tmp_path):
    mine = tmp_path / "mine.toml"
    mine.write_text("depth_limit = 15\nload_prelude = false\n")
    loop = tmp_path / "loop.rholog"
    loop.write_text("loop :: i_X ==> i_Y :- loop :: i_X ==> i_Y.\n")
    result = runner.invoke(main, ["--settings", str(mine), str(loop), "-q", "loop :: a ==> i_Y"])
    assert result.exit_code == 2
    assert "depth limit 15" in result.stderr


def test_trace_goes_to_stderr(runner):
    result = runner.invoke(main, ["--trace", "--no-prelude", "-q", "id :: a ==> i_X"])
    assert result.exit_code == 0
    assert result.stdout == "i_X = a\n"
    assert "native id" in result.stderr


# top level

class Console:
    def __init__(self, *lines: str):
        self.lines = list(lines)
        self.prompts: list[str] = []
        self.out: list[str] = []
        self.err: list[str] = []

    def read(self, prompt: str) -> str:
        self.prompts.append(prompt)
        if not self.lines:
            raise EOFError
        return self.lines.pop(0)

    def echo(self, message: str = "", err: bool = False) -> None:
        (self.err if err else self.out).append(message)


def _run(session: Session, *lines: str) -> Console:
    console = Console(*lines)
    Repl(session, console.read, console.echo).run()
    return console


def test_semicolon_asks_for_more_answers(load):
    session = load("elementary")
    console = _run(session, "str1 :: (a, b, a, f(a)) ==> s_X.", ";", ";")
    assert console.out == ["s_X = (f(a), b, a, f(a))", "s_X = (a, b, f(a), f(a))", "false.", ""]
    assert console.prompts == [PROMPT, "", "", PROMPT]


def test_anything_else_stops_after_an_answer(load):
    session = load("elementary")
    console = _run(session, "str1 :: (a, b, a, f(a)) ==> s_X.", "", "halt.")
    assert console.out == ["s_X = (f(a), b, a, f(a))", "."]


def test_multi_line_input_and_blank_lines(load):
    session = load("elementary")
    console = _run(session, "", "str1 :: (a, b)", "  ==> s_X.", "")
    assert console.prompts[:3] == [PROMPT, PROMPT, CONTINUATION]
    assert console.out[0] == "s_X = (f(a), b)"


def test_consult_and_listing(session, tmp_path):
    program = tmp_path / "mine.rholog"
    program.write_text("r :: a ==> b.\n")
    console = _run(session, f"consult('{program}').", "listing.", "r :: a ==> i_X.")
    assert console.out[:3] == [f"consulted {program}", "r :: a ==> b.", "i_X = b"]


def test_errors_are_reported_and_the_loop_goes_on(session):
    console = _run(session, "consult('missing.rholog').", "id :: i_X ==> i_Y.", "f(.", "id :: a ==> i_X.")
    assert len(console.err) == 3
    assert all(line.startswith("error: ") for line in console.err)
    assert console.out[0] == "i_X = a"


def test_interactive_reads_from_the_console(load):
    session = load("elementary")
    console = _run(session, "interactive :: a ==> s_X.", "str1.", "finish", "")
    assert console.out[:4] == ["current: a", "=> f(a)", "current: f(a)", "s_X = f(a)"]
    assert console.prompts[1:3] == ["strategy (or finish)> "] * 2


def test_first_answer_mode_does_not_ask(load):
    session = load("elementary")
    session.settings = session.settings.model_copy(update={"answer_mode": "first"})
    console = _run(session, "str1 :: (a, b, a, f(a)) ==> s_X.")
    assert console.out == ["s_X = (f(a), b, a, f(a))", ".", ""]
    assert console.prompts == [PROMPT, PROMPT]


def test_all_answer_mode_prints_everything(load):
    session = load("elementary")
    session.settings = session.settings.model_copy(update={"answer_mode": "all"})
    console = _run(session, "str1 :: (a, b, a, f(a)) ==> s_X.", "str1 :: b ==> s_X.")
    assert console.out == ["s_X = (f(a), b, a, f(a))", "s_X = (a, b, f(a), f(a))", ".", "false.", ""]
    assert console.prompts == [PROMPT, PROMPT, PROMPT]
