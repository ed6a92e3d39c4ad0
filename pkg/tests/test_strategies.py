from __future__ import annotations

import random

import pytest

from hedgerule.core.errors import InteractionError
from hedgerule.engine import Session
from hedgerule.strategies.combinators import NATIVES, is_native, native_for
from hedgerule.syntax.printer import format_hedge
from hedgerule.syntax.reader import parse_term


class ScriptedChannel:
    def __init__(self, *replies: str):
        self.replies = list(replies)
        self.shown: list[str] = []
        self.notices: list[str] = []
        self.asked: list[str] = []

    def read_strategy(self, current):
        self.asked.append(format_hedge(current))
        return self.replies.pop(0) if self.replies else None

    def show(self, current):
        self.shown.append(format_hedge(current))

    def notify(self, message):
        self.notices.append(message)


def test_flatten_one_step(load, values):
    load("flatten")
    assert values("flatten_one :: f(a, f(b, f(c)), f(d)) ==> i_X", "i_X")[0] == "f(a, b, f(c), f(d))"


def test_flatten_normal_form(load, values):
    load("flatten")
    assert set(values("flatten :: f(a, f(b, f(c)), f(d)) ==> i_X", "i_X")) == {"f(a, b, c, d)"}


def test_map1_flatten(load, values):
    load("flatten")
    assert values("map1(flatten) :: (a, f(f(a)), g(a, g(b))) ==> s_X", "s_X")[0] == "(a, f(a), g(a, b))"


def test_replace_all_first_answer(load, values):
    load("replace")
    found = values("replace_all :: (f(x, g(x, y)), x -> z, y -> a) ==> i_X", "i_X")
    assert found[0] == "f(z, g(z, a))"


def test_prover_proves_excluded_middle(load, values):
    load("prover")
    assert values("prove :: sequent(ant(eps), cons(-(p) v p)) ==> i_X", "i_X")[0] == "true"


def test_prover_fails_on_an_atom(load, values):
    load("prover")
    assert values("prove :: sequent(ant(eps), cons(p)) ==> i_X", "i_X")[0] == "false"


def test_identity(session, values):
    assert values("id :: (a, f(b)) ==> s_X", "s_X") == ["(a, f(b))"]
    assert values("id :: eps ==> s_X", "s_X") == ["eps"]


def test_compose_with_more_than_two_strategies(load, values):
    load("elementary")
    found = values("compose(str1, str1, str2) :: (a, a) ==> s_X", "s_X")
    assert found == ["f(a)"] * 2


def test_nf_of_a_failing_strategy_is_the_input(load, values):
    load("elementary")
    assert values("nf(str1) :: (b, c) ==> s_X", "s_X") == ["(b, c)"]


def test_iterate(load, values):
    load("elementary")
    assert values("iterate(str1, 0) :: (a, a) ==> s_X", "s_X") == ["(a, a)"]
    assert values("iterate(str1, 1) :: (a, b, a, f(a)) ==> s_X", "s_X") == \
        values("str1 :: (a, b, a, f(a)) ==> s_X", "s_X")
    assert values("iterate(str1, 2) :: (a, a) ==> s_X", "s_X") == ["(f(a), f(a))"] * 2
    assert values("iterate(str1, 3) :: (a, a) ==> s_X", "s_X") == []


def test_iterate_two_flatten_steps(load, values):
    load("flatten")
    found = values("iterate(flatten_one, 2) :: f(a, f(b, f(c)), f(d)) ==> i_X", "i_X")
    assert "f(a, b, c, f(d))" in found
    assert "f(a, b, f(c), d)" in found


def test_iterate_needs_a_natural_number(load, values):
    load("elementary")
    with pytest.warns(RuntimeWarning, match="natural number"):
        assert values("iterate(str1, x) :: a ==> s_X", "s_X") == []
    with pytest.warns(RuntimeWarning, match="natural number"):
        assert values("iterate(str1, -1) :: a ==> s_X", "s_X") == []


def test_map1_enumerates_rightmost_fastest(load, values):
    load("elementary")
    assert values("map1(choice(id, str1)) :: (a, a) ==> s_X", "s_X") == [
        "(a, a)", "(a, f(a))", "(f(a), a)", "(f(a), f(a))",
    ]


def test_map1_fails_when_one_element_fails(load, values):
    load("elementary")
    assert values("map1(str1) :: (a, b) ==> s_X", "s_X") == []
    assert values("map1(str1) :: eps ==> s_X", "s_X") == ["eps"]


def test_map1_wants_a_single_term_per_element(session, values):
    session.consult_text("dup :: i_X ==> (i_X, i_X).")
    assert values("map1(dup) :: (a, b) ==> s_X", "s_X") == []
    assert values("map(dup) :: (a, b) ==> s_X", "s_X") == ["(a, a, b, b)"]
    assert values("map(dup) :: eps ==> s_X", "s_X") == ["eps"]


def test_rewrite_on_a_single_redex(load, values):
    load("strat")
    assert values("rewrite(strat) :: f(a) ==> i_X", "i_X") == ["g(a)"]
    assert values("rewrite(strat) :: h(a, b) ==> i_X", "i_X") == []
    assert values("rewrite(strat) :: (f(a), f(a)) ==> s_X", "s_X") == []


def test_interactive_applies_each_strategy_in_turn(settings):
    channel = ScriptedChannel("str1.", "bogus((", "str2", "finish")
    session = Session(settings, channel=channel)
    session.consult_text("str1 :: (s_1, a, s_2) ==> (s_1, f(a), s_2).\n"
                         "str2 :: (s_1, i_x, s_2, i_x, s_3) ==> (s_1, i_x, s_2, s_3).")
    (answer,) = session.solve("interactive :: a ==> s_X")
    assert format_hedge(answer["s_X"]) == "f(a)"
    assert channel.shown == ["f(a)"]
    assert channel.asked == ["a", "f(a)", "f(a)", "f(a)"]
    assert channel.notices[0].startswith("cannot read strategy")
    assert channel.notices[1] == "str2 failed; the hedge is unchanged"


def test_interactive_finishes_at_end_of_input(settings):
    session = Session(settings, channel=ScriptedChannel())
    (answer,) = session.solve("interactive :: (a, b) ==> s_X")
    assert format_hedge(answer["s_X"]) == "(a, b)"


def test_interactive_needs_a_channel(session):
    with pytest.raises(InteractionError):
        list(session.solve("interactive :: a ==> s_X"))


def test_native_lookup_respects_arity():
    assert native_for(parse_term("nf(id)")) is NATIVES["nf"]
    assert native_for(parse_term("nf(id, id)")) is None
    assert native_for(parse_term("choice")) is None
    assert is_native("compose", 3)
    assert not is_native("iterate", 1)
    assert not is_native("str1", 0)


# prefix laws

_PROGRAM = """
str1 :: (s_1, a, s_2) ==> (s_1, f(a), s_2).
str2 :: (s_1, i_x, s_2, i_x, s_3) ==> (s_1, i_x, s_2, s_3).
swap :: (i_X, i_Y, s_Z) ==> (i_Y, i_X, s_Z).
wrap :: i_X ==> g(i_X).
wrap :: (i_X, i_Y) ==> g(i_X, i_Y).
strat :: f(i_X) ==> g(i_X).
strat :: f(f(i_X)) ==> i_X.
"""

_POOL = ("id", "str1", "str2", "swap", "wrap", "strat", "rewrite(strat)", "map1(strat)",
         "choice(str1, swap)", "compose(str1, str2)")


def _random_hedge(rng: random.Random) -> str:
    atoms = ("a", "b", "f(a)", "f(f(b))", "g(a, b)")
    items = [rng.choice(atoms) for _ in range(rng.randint(0, 4))]
    return "(" + ", ".join(items) + ")" if items else "eps"


@pytest.mark.parametrize("block", range(10))
def test_first_one_is_a_prefix_of_first_all_which_is_a_prefix_of_choice(settings, block):
    session = Session(settings)
    session.consult_text(_PROGRAM)

    def answers(query: str) -> list[str]:
        return [format_hedge(a["s_X"]) for a in session.solve(query)]

    for seed in range(block * 100, (block + 1) * 100):
        rng = random.Random(seed)
        strategies = ", ".join(rng.choice(_POOL) for _ in range(rng.randint(1, 3)))
        h = _random_hedge(rng)
        one = answers(f"first_one({strategies}) :: {h} ==> s_X")
        every = answers(f"first_all({strategies}) :: {h} ==> s_X")
        both = answers(f"choice({strategies}) :: {h} ==> s_X")
        assert len(one) <= 1
        assert every[:len(one)] == one, seed
        assert both[:len(every)] == every, seed
        assert bool(one) == bool(every) == bool(both), seed


@pytest.mark.parametrize("block", range(4))
def test_compose_folds_to_the_right_and_nf_is_irreducible(settings, block):
    session = Session(settings)
    session.consult_text(_PROGRAM)

    def answers(query: str) -> list[str]:
        return [format_hedge(a["s_X"]) for a in session.solve(query)]

    for seed in range(block * 50, (block + 1) * 50):
        rng = random.Random(seed)
        first, second, third = (rng.choice(_POOL) for _ in range(3))
        h = _random_hedge(rng)
        assert answers(f"compose({first}, {second}, {third}) :: {h} ==> s_X") == \
            answers(f"compose({first}, compose({second}, {third})) :: {h} ==> s_X"), seed
        for normal in answers(f"nf(str2) :: {h} ==> s_X"):
            assert answers(f"str2 :: {normal} ==> s_X") == [], seed
