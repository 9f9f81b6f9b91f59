from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from sepmodels.errors import ParseError
from sepmodels.props import PMF, And, Dist, Or, PointsTo, Star, Top
from sepmodels.syntax import parse_prop, print_prop, tokenize

names = st.sampled_from(["x", "y", "z", "X", "Y", "loc_1", "a'"])


@st.composite
def pmfs(draw):
    ks = draw(st.lists(st.integers(-3, 5), min_size=1, max_size=4, unique=True))
    weights = [draw(st.integers(1, 6)) for _ in ks]
    total = sum(weights)
    return PMF({k: F(w, total) for k, w in zip(ks, weights)})


store_leaves = st.one_of(st.just(Top()), st.builds(PointsTo, names, st.integers(-20, 20)))
prob_leaves = st.one_of(st.just(Top()), st.builds(Dist, names, pmfs()))


def trees(leaves):
    return st.recursive(leaves, lambda sub: st.one_of(
        st.builds(Star, sub, sub), st.builds(And, sub, sub), st.builds(Or, sub, sub)), max_leaves=8)


def test_examples():
    assert parse_prop("x |-> 8 * y |-> 3") == Star(PointsTo("x", 8), PointsTo("y", 3))
    ber = PMF({0: F(1, 2), 1: F(1, 2)})
    assert parse_prop("X ~ ber(1/2) * Y ~ ber(1/2)") == Star(Dist("X", ber), Dist("Y", ber))
    assert parse_prop("true /\\ x |-> 1 * y |-> 2") == And(Top(), Star(PointsTo("x", 1), PointsTo("y", 2)))


def test_precedence_and_associativity():
    a, b, c = (PointsTo(v, 0) for v in "abc")
    assert parse_prop("a |-> 0 \\/ b |-> 0 /\\ c |-> 0") == Or(a, And(b, c))
    assert parse_prop("a |-> 0 * b |-> 0 * c |-> 0") == Star(Star(a, b), c)
    assert parse_prop("a |-> 0 * (b |-> 0 * c |-> 0)") == Star(a, Star(b, c))
    assert parse_prop("(a |-> 0 \\/ b |-> 0) * c |-> 0") == Star(Or(a, b), c)


def test_pmf_literal():
    assert parse_prop("X ~ {0: 1/4, 2: 3/4}") == Dist("X", PMF({0: F(1, 4), 2: F(3, 4)}))
    assert parse_prop("X ~ {-1: 1}") == Dist("X", PMF({-1: 1}))


def test_printer():
    prop = Star(Or(PointsTo("x", 1), Top()), And(PointsTo("y", -2), Top()))
    assert print_prop(prop) == "(x |-> 1 \\/ true) * (y |-> -2 /\\ true)"
    assert print_prop(Dist("X", PMF.bernoulli(F(1, 3)))) == "X ~ {0: 2/3, 1: 1/3}"


@pytest.mark.parametrize("text, line, col", [
    ("x |-> ", 1, 7),
    ("x |-> 1 *", 1, 10),
    ("x |-> 1\n  * @", 2, 5),
    ("(x |-> 1", 1, 9),
    ("X ~ {0: 1/0}", 1, 11),
    ("X ~ {0: 1/2, 0: 1/2}", 1, 14),
    ("X ~ {0: 1/3}", 1, 5),
    ("x 3", 1, 3),
    ("x |-> 1 y", 1, 9),
])
def test_errors_carry_position(text, line, col):
    with pytest.raises(ParseError) as info:
        parse_prop(text)
    assert (info.value.line, info.value.column) == (line, col)
    assert str(info.value).startswith(f"{line}:{col}: ")


def test_kind_mismatch():
    with pytest.raises(ParseError):
        parse_prop("x |-> 1", "prob")
    with pytest.raises(ParseError):
        parse_prop("X ~ ber(1/2)", "store")
    assert parse_prop("true * true", "store") == parse_prop("true * true", "prob")
    with pytest.raises(ValueError):
        parse_prop("true", "quantum")


def test_tokens_track_lines():
    toks = tokenize("x\n  |-> 2")
    assert [(t.kind, t.line, t.col) for t in toks] == [("ident", 1, 1), ("arrow", 2, 3), ("int", 2, 7), ("eof", 2, 8)]


@given(trees(store_leaves))
def test_round_trip_store(prop):
    text = print_prop(prop)
    assert parse_prop(text, "store") == prop
    assert print_prop(parse_prop(text)) == text


@given(trees(prob_leaves))
def test_round_trip_prob(prop):
    text = print_prop(prop)
    assert parse_prop(text, "prob") == prop
    assert print_prop(parse_prop(text)) == text


@given(trees(store_leaves))
def test_reformatting_is_canonical(prop):
    # extra parentheses and whitespace disappear after one print
    noisy = "( " + print_prop(prop).replace(" ", "   ") + " )"
    assert print_prop(parse_prop(noisy)) == print_prop(prop)
