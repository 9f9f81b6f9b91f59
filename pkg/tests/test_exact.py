from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from sepmodels.errors import InputError
from sepmodels.exact import EMPTY, UNIT, IntervalSet, format_rat, make_interval_set, to_rat

DENOM = 12
endpoint = st.integers(0, DENOM).map(lambda n: F(n, DENOM))
raw_pair = st.tuples(endpoint, endpoint).map(lambda t: tuple(sorted(t)))
raw_sets = st.lists(raw_pair, max_size=5)
interval_sets = raw_sets.map(make_interval_set)


def members(raw, x) -> bool:
    return any(a <= x < b for a, b in raw)


def grid(*sets):
    """Midpoints between consecutive breakpoints of all operands."""
    pts = sorted({F(0), F(1)}.union(*(s.breakpoints() for s in sets)))
    return [(a + b) / 2 for a, b in zip(pts, pts[1:])]


def is_canonical(s: IntervalSet) -> bool:
    pieces = s.pieces
    if any(not (0 <= a < b <= 1) for a, b in pieces):
        return False
    return all(b1 < a2 for (_, b1), (a2, _) in zip(pieces, pieces[1:]))


def test_make_overlapping():
    assert make_interval_set([(0, F(1, 2)), (F(1, 4), F(3, 4))]).pieces == ((0, F(3, 4)),)


def test_make_empty_and_degenerate():
    assert make_interval_set([]) == EMPTY
    assert make_interval_set([(F(1, 3), F(1, 3))]) == EMPTY


@pytest.mark.parametrize("raw", [[(F(-1, 2), F(1, 2))], [(0, F(3, 2))], [(F(1, 2), F(1, 4))]])
def test_make_rejects_bad_endpoints(raw):
    with pytest.raises(InputError):
        make_interval_set(raw)


def test_floats_rejected():
    with pytest.raises(InputError):
        to_rat(0.5)
    with pytest.raises(InputError):
        to_rat(True)


def test_rat_parsing_and_format():
    assert to_rat("2/6") == F(1, 3)
    assert to_rat("3") == 3
    assert format_rat(F(4, 8)) == "1/2"
    assert format_rat(F(2)) == "2"


def test_examples():
    half = IntervalSet.interval(0, F(1, 2))
    assert half & IntervalSet.interval(F(1, 4), F(3, 4)) == IntervalSet.interval(F(1, 4), F(1, 2))
    outer = make_interval_set([(0, F(1, 3)), (F(2, 3), 1)])
    assert ~outer == IntervalSet.interval(F(1, 3), F(2, 3))
    assert IntervalSet.interval(F(1, 3), F(2, 3)).measure() == F(1, 3)
    assert EMPTY.measure() == 0
    assert make_interval_set([(0, F(1, 2)), (F(3, 4), 1)]).measure() == F(3, 4)


def test_ae_equal_examples():
    a = IntervalSet.interval(0, F(1, 3))
    assert a.ae_equal(IntervalSet.interval(0, F(1, 3)))
    assert IntervalSet.interval(0, F(1, 2)).ae_equal(
        make_interval_set([(0, F(1, 2)), (F(1, 2), F(1, 2))]))
    assert not IntervalSet.interval(0, F(1, 2)).ae_equal(a)


def test_contains_and_leftmost():
    s = make_interval_set([(F(1, 4), F(1, 2)), (F(3, 4), 1)])
    assert s.contains(F(1, 4)) and not s.contains(F(1, 2)) and s.contains(F(7, 8))
    assert s.leftmost == F(1, 4)


@given(raw_sets)
def test_canonical_form(raw):
    s = make_interval_set(raw)
    assert is_canonical(s)
    for x in grid(s) + [F(n, DENOM) for n in range(DENOM)]:
        assert s.contains(x) == members(raw, x)


@given(raw_sets, raw_sets)
def test_ops_match_grid_oracle(ra, rb):
    a, b = make_interval_set(ra), make_interval_set(rb)
    cases = {
        "union": (a | b, lambda x: members(ra, x) or members(rb, x)),
        "intersect": (a & b, lambda x: members(ra, x) and members(rb, x)),
        "difference": (a - b, lambda x: members(ra, x) and not members(rb, x)),
        "symm_diff": (a ^ b, lambda x: members(ra, x) != members(rb, x)),
        "complement": (~a, lambda x: not members(ra, x)),
    }
    pts = grid(a, b)
    for name, (result, oracle) in cases.items():
        assert is_canonical(result), name
        for x in pts:
            assert result.contains(x) == oracle(x), (name, x)


@given(interval_sets, interval_sets)
def test_measure_inclusion_exclusion(a, b):
    assert (a | b).measure() + (a & b).measure() == a.measure() + b.measure()


@given(interval_sets)
def test_complement_laws(a):
    assert a | ~a == UNIT
    assert a & ~a == EMPTY
    assert a ^ a == EMPTY
    assert ~~a == a


@given(interval_sets, interval_sets)
def test_measure_monotone(a, b):
    if a & b == a:
        assert a.measure() <= b.measure()
        assert a.issubset(b)


@given(raw_sets, st.randoms(use_true_random=False))
def test_canonicity_under_rewriting(raw, rnd):
    # split pieces, add degenerate ones and shuffle: same set, same representation
    rewritten = []
    for a, b in raw:
        if a < b and rnd.random() < 0.5:
            mid = a + (b - a) * F(rnd.randint(1, 3), 4)
            rewritten += [(a, mid), (mid, b)]
        else:
            rewritten.append((a, b))
        rewritten.append((a, a))
    rnd.shuffle(rewritten)
    s, t = make_interval_set(raw), make_interval_set(rewritten)
    assert s == t and hash(s) == hash(t)
    assert s.ae_equal(t)


@given(interval_sets, interval_sets)
def test_ae_equal_iff_identical(a, b):
    assert a.ae_equal(b) == (a.pieces == b.pieces)
    assert ((a ^ b).measure() == 0) == (a == b)


@given(interval_sets)
def test_only_empty_is_negligible(a):
    assert (a.measure() == 0) == a.is_empty() == (a == EMPTY)
