import itertools
from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from helpers import GROUPS, elems, ext_elems
from valtop.groups import (
    INF, TRIVIAL, GroupElem, GroupMismatch, GroupTypeError, NonNegative, Q, Z, add, between,
    compare, elem, format_value, in_monoid, is_complete, lex, negate, parse_group,
    parse_monoid, parse_value, smallest_positive, split_positive, unit, value_from_json,
    value_to_json, zero,
)

ZZ2 = lex(Z, Z)


def test_compare_examples():
    assert compare(elem(ZZ2, 1, -5), elem(ZZ2, 0, 100)) == 1
    assert compare(elem(Q, Fraction(1, 3)), elem(Q, Fraction(2, 5))) == -1
    assert compare(INF, INF) == 0
    assert compare(elem(Z, 10**9), INF) == -1


def test_add_examples():
    assert add(elem(Z, 3), elem(Z, 4)) == elem(Z, 7)
    assert add(elem(Z, 3), INF) is INF
    assert add(INF, elem(Z, 3)) is INF
    assert add(elem(ZZ2, 1, 2), elem(ZZ2, 0, -5)) == elem(ZZ2, 1, -3)


def test_negate_examples():
    assert negate(elem(Z, 5)) == elem(Z, -5)
    assert negate(elem(Q, Fraction(-1, 2))) == elem(Q, Fraction(1, 2))
    assert negate(elem(ZZ2, 1, -2)) == elem(ZZ2, -1, 2)


def test_group_mismatch():
    with pytest.raises(GroupMismatch):
        elem(Z, 1) + elem(Q, 1)
    with pytest.raises(GroupMismatch):
        compare(elem(Z, 1), elem(ZZ2, 0, 1))


def test_coordinates_checked():
    with pytest.raises(ValueError):
        elem(Z, Fraction(1, 2))
    with pytest.raises(ValueError):
        GroupElem(ZZ2, (1,))


def test_smallest_positive_examples():
    assert smallest_positive(Z) == elem(Z, 1)
    assert smallest_positive(Q) is None
    assert smallest_positive(ZZ2) == elem(ZZ2, 0, 1)


def test_smallest_positive_lex_exhaustive():
    # nothing strictly between (0,0) and (0,1) in a window, by cases on a
    s = elem(ZZ2, 0, 1)
    z = zero(ZZ2)
    for a, b in itertools.product(range(-6, 7), repeat=2):
        x = elem(ZZ2, a, b)
        assert not (z < x < s)


def test_between_examples():
    assert between(elem(Z, 3), elem(Z, 4)) is None
    assert between(elem(Q, 0), elem(Q, 1)) == elem(Q, Fraction(1, 2))
    assert between(elem(ZZ2, 0, 3), elem(ZZ2, 1, 0)) == elem(ZZ2, 0, 4)
    assert between(elem(Z, 3), INF) == elem(Z, 4)


def test_between_precondition():
    with pytest.raises(ValueError):
        between(elem(Z, 4), elem(Z, 4))


def test_split_positive_examples():
    assert split_positive(elem(Q, 1)) == (elem(Q, Fraction(1, 2)), elem(Q, Fraction(1, 2)))
    assert split_positive(elem(Z, 5)) == (elem(Z, 1), elem(Z, 4))
    assert split_positive(elem(Z, 1)) is None
    with pytest.raises(ValueError):
        split_positive(elem(Z, 0))


@pytest.mark.parametrize("g", [Z, ZZ2])
def test_between_matches_window_search(g):
    if g == Z:
        pts = [elem(Z, k) for k in range(-6, 7)]
    else:
        pts = [elem(g, a, b) for a in range(-2, 3) for b in range(-4, 5)]
    # a window search is exact for Z; for lex(Z,Z) a gap of one step in the
    # first coordinate always has room, so compare only the absent cases
    for a, b in itertools.combinations(sorted(pts), 2):
        found = between(a, b)
        window = any(a < x < b for x in pts)
        if found is None:
            assert not window
        else:
            assert a < found < b
        if g == Z:
            assert (found is None) == (not window)


def test_completeness_flags():
    assert is_complete(Z)
    assert not is_complete(Q)
    assert not is_complete(ZZ2)
    assert is_complete(TRIVIAL)
    assert is_complete(lex(TRIVIAL, Z))


def test_trivial_group():
    z = zero(TRIVIAL)
    assert z + z == z
    assert unit(TRIVIAL) is None
    assert between(z, INF) is None
    assert smallest_positive(TRIVIAL) is None


@pytest.mark.parametrize("text,expected", [
    ("Z", Z), ("Q", Q), ("lex(Z,Q)", lex(Z, Q)), ("lex( lex(Z,Z) , Q )", lex(lex(Z, Z), Q)), ("0", TRIVIAL),
])
def test_parse_group(text, expected):
    assert parse_group(text) == expected
    assert parse_group(str(expected)) == expected


def test_parse_monoid_and_errors():
    m = parse_monoid("nonneg(Q)")
    assert isinstance(m, NonNegative) and m.group == Q
    for bad in ("R", "lex(Z)", "lex(Z,Q", "Z Q", "lex(nonneg(Z),Z)"):
        with pytest.raises(GroupTypeError):
            parse_monoid(bad)
    with pytest.raises(GroupTypeError):
        parse_group("nonneg(Z)")


def test_monoid_membership():
    m = NonNegative(Z)
    assert in_monoid(elem(Z, 0), m) and in_monoid(INF, m)
    assert not in_monoid(elem(Z, -1), m)


def test_value_text_and_json():
    g = lex(Z, Q)
    x = elem(g, 2, Fraction(-3, 4))
    assert value_to_json(x) == [2, "-3/4"]
    assert value_from_json(value_to_json(x), g) == x
    assert value_to_json(INF) == "inf"
    assert value_from_json("inf", g) is INF
    assert format_value(x) == "(2,-3/4)"
    assert parse_value(format_value(x), g) == x
    assert parse_value("inf", g) is INF


# ---------------------------------------------------------------- properties

group_and_triple = st.sampled_from(GROUPS).flatmap(lambda g: st.tuples(elems(g), elems(g), elems(g)))


@given(group_and_triple)
def test_order_axioms(t):
    a, b, c = t
    assert sum([a < b, a == b, a > b]) == 1
    if a < b and b < c:
        assert a < c
    if a < b:
        assert a + c < b + c


@given(group_and_triple)
def test_group_laws(t):
    a, b, c = t
    z = zero(a.group)
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert a + z == a
    assert a + negate(a) == z


@given(st.sampled_from(GROUPS).flatmap(lambda g: st.tuples(ext_elems(g), ext_elems(g))))
def test_infinity_is_maximal_and_absorbing(t):
    a, b = t
    assert a <= INF
    assert a + INF is INF
    if a is not INF and b is not INF:
        assert a + b is not INF


@given(st.sampled_from(GROUPS).flatmap(elems))
def test_split_positive_property(a):
    g = a.group
    assume(a != zero(g))
    alpha = a if a > zero(g) else -a
    parts = split_positive(alpha)
    if parts is None:
        assert alpha == smallest_positive(g)
    else:
        a1, a2 = parts
        assert a1 > zero(g) and a2 > zero(g) and a1 + a2 == alpha


@given(st.sampled_from([Z, lex(Z, Z), lex(Q, Z)]).flatmap(elems))
def test_no_room_after_smallest_positive(x):
    s = smallest_positive(x.group)
    assert between(x, x + s) is None


@given(st.sampled_from(GROUPS).flatmap(lambda g: st.tuples(elems(g), elems(g))))
def test_between_strictly_inside(t):
    a, b = sorted(t)
    assume(a < b)
    m = between(a, b)
    if m is not None:
        assert a < m < b
    assert a < between(a, INF) < INF
