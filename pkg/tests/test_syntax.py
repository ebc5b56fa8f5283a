import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from residua.errors import FormulaSyntaxError
from residua.logic import And, Atom, Bot, Implies, Not, Or, Top, atoms, conj, disj, parse, positive, to_text
from residua.logic.syntax import depth


def p(i):
    return Atom(i)


def test_parse_examples():
    assert parse("p0 -> (p1 | ~p0)") == Implies(p(0), Or(p(1), Not(p(0))))
    assert parse("~p0 | ~~p0") == Or(Not(p(0)), Not(Not(p(0))))


def test_precedence_and_associativity():
    assert parse("p0 -> p1 -> p2") == Implies(p(0), Implies(p(1), p(2)))
    assert parse("p0 | p1 | p2") == Or(Or(p(0), p(1)), p(2))
    assert parse("p0 & p1 | p2") == Or(And(p(0), p(1)), p(2))
    assert parse("p0 | p1 & p2 -> p3") == Implies(Or(p(0), And(p(1), p(2))), p(3))
    assert parse("~p0 & p1") == And(Not(p(0)), p(1))
    assert parse("T -> F") == Implies(Top(), Bot())


@pytest.mark.parametrize("text, pos", [("p0 ->", 5), ("(p0", 3), ("p0 p1", 3), ("p0 + p1", 3), ("", 0), ("q1", 0)])
def test_syntax_errors_report_position(text, pos):
    with pytest.raises(FormulaSyntaxError) as info:
        parse(text)
    assert info.value.position == pos


def test_printer_examples():
    assert to_text(parse("p0 -> (p1 | ~p0)")) == "p0 -> (p1 | ~p0)"
    assert to_text(parse("~p0 | ~~p0")) == "~p0 | ~~p0"
    assert to_text(parse("~(p0 & p1)")) == "~(p0 & p1)"
    assert to_text(parse("p0 & p1 & p2")) == "p0 & p1 & p2"
    assert to_text(parse("(p0 -> p1) -> p2")) == "(p0 -> p1) -> p2"


def test_helpers():
    s = parse("p0 & ~p2 -> p1")
    assert atoms(s) == {0, 1, 2}
    assert depth(s) == 3
    assert positive(parse("p0 & (p1 | p2) -> p0"))
    assert not positive(s)
    assert conj([]) == Top() and disj([]) == Bot()
    assert conj([p(0), p(1), p(2)]) == And(And(p(0), p(1)), p(2))


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_print_parse_roundtrip(seed):
    s = oracles.random_sentence(random.Random(seed), 4, 4)
    text = to_text(s)
    assert parse(text) == s
    assert to_text(parse(text)) == text
