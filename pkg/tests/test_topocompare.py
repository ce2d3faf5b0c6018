import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from valtop.groups import INF, TRIVIAL, NonNegative, Q, Z, elem, leaves, lex
from valtop.opensets import A1, A2, A3, Interval, OpenSet, is_open_in, member, ray_above
from valtop.topocompare import (
    SQRT2, CutSet, complement_member, cover_incomplete, cover_no_smallest, covers,
    gamma_prime_equality, is_discrete, random_cut_pairs, refines, singleton_open_oracle,
    standard_samples,
)

ALL_GROUPS = [Z, Q, lex(Z, Z), lex(Q, Z), lex(Z, Q), lex(Q, Q), TRIVIAL]


def z(k):
    return elem(Z, k)


def q(a, b=1):
    return elem(Q, Fraction(a, b))


def test_is_discrete_examples():
    assert is_discrete(Z)
    assert not is_discrete(Q)
    assert is_discrete(lex(Z, Z))
    assert not is_discrete(lex(Z, Q))
    # (0, 1) is the smallest positive element of lex(Q, Z)
    assert is_discrete(lex(Q, Z))
    assert is_discrete(TRIVIAL)


@pytest.mark.parametrize("g", ALL_GROUPS, ids=str)
def test_is_discrete_matches_singleton_oracle(g):
    assert is_discrete(g) == singleton_open_oracle(g)


def test_refines_examples():
    v = refines(A1, A2, Z)
    assert v.consistent and v.strict == ray_above(z(0))
    two = OpenSet(Q, (Interval(None, q(0)), Interval(q(5), None, True)))
    v = refines(A2, A3, Q, standard_samples(Q) + [two])
    assert v.consistent and v.strict is not None
    assert is_open_in(v.strict, A2) and not is_open_in(v.strict, A3)
    v = refines(A2, A3, Q, [two])
    assert v.strict == two
    v = refines(A1, A2, Z, monoid=NonNegative(Z))
    assert v.consistent and v.strict is None


def test_refines_reports_refutation():
    v = refines(A2, A1, Z)
    assert not v.consistent and v.refuted == ray_above(z(0))


def test_samples_are_versioned_and_sized():
    for g in ALL_GROUPS[:-1]:
        s = standard_samples(g)
        assert 30 <= len(s) <= 45
        assert s == standard_samples(g)


@pytest.mark.parametrize("g", ALL_GROUPS, ids=str)
def test_refinement_lattice(g):
    assert refines(A2, A3, g).consistent
    assert refines(A1, A2, g).consistent
    assert refines(A1, A3, g).consistent
    # the carrier Gamma never has a smallest element, so A2 is strictly coarser
    # than A1 whenever Gamma is nontrivial
    strict = refines(A1, A2, g).strict
    assert (strict is not None) == (g != TRIVIAL)


def test_circle_equals_compactification_over_integers():
    v = refines(A2, A3, Z)
    w = refines(A3, A2, Z)
    assert v.consistent and w.consistent and v.equal


@pytest.mark.parametrize("g", [Z, Q, lex(Z, Z), lex(Q, Z), lex(Z, Q)], ids=str)
def test_gamma_prime_equality(g):
    v = gamma_prime_equality(g)
    assert v.equal and v.forward.strict is None and v.backward.strict is None


def test_gamma_prime_adversarial_ray():
    U = ray_above(z(3))
    m = NonNegative(Z)
    assert is_open_in(U, A1, m) and is_open_in(U, A2, m)
    assert gamma_prime_equality(Z, [U]).equal


def test_cover_no_smallest_examples():
    rep = cover_no_smallest(Q, [q(3)], [[q(-1), q(-10)]])
    assert rep.ok and rep.missed[0][1] == q(-11)
    rep = cover_no_smallest(Z, [z(5), INF], [[z(0)]])
    assert rep.ok
    assert member(rep.covered[0][1], z(5))
    assert rep.missed[0][1] == z(-1)
    with pytest.raises(ValueError):
        cover_no_smallest(TRIVIAL, [], [])


def test_cover_incomplete_examples():
    assert covers(SQRT2, q(3), 1, Fraction(3, 2))
    assert covers(SQRT2, q(0), 1, Fraction(3, 2))
    assert not covers(SQRT2, q(5, 4), 1, Fraction(3, 2))
    rep = cover_incomplete(SQRT2, [q(3), q(0), INF, q(7, 5)],
                           [[(Fraction(7, 5), Fraction(3, 2)), (1, 2)]])
    assert rep.ok
    assert rep.missed[0][1] == Fraction(29, 20)


def test_sqrt2_cut():
    assert SQRT2.sup == sympy.sqrt(2)
    assert Fraction(7, 5) in SQRT2 and Fraction(3, 2) not in SQRT2
    assert SQRT2.is_upper_bound(Fraction(3, 2)) and not SQRT2.is_upper_bound(Fraction(141, 100))
    assert SQRT2.witness in SQRT2 and SQRT2.is_upper_bound(SQRT2.bound)


def test_cut_expressions():
    S = CutSet.from_expression("q^3 < 3 and q > 1")
    assert S.sup == sympy.cbrt(3) or sympy.simplify(S.sup - sympy.Integer(3) ** sympy.Rational(1, 3)) == 0
    assert cover_incomplete(S, [q(1), q(2)], [[(Fraction(6, 5), Fraction(2))]]).ok
    for bad in ("q < 2", "q^2 < 4 and q > 0", "q^2 < 0", "q^2 <", "q > 1"):
        with pytest.raises(ValueError):
            CutSet.from_expression(bad)


def test_cover_incomplete_rejects_non_members():
    with pytest.raises(ValueError):
        cover_incomplete(SQRT2, [], [[(Fraction(3, 2), Fraction(2))]])
    with pytest.raises(ValueError):
        cover_incomplete(SQRT2, [], [[(Fraction(1), Fraction(7, 5))]])


@given(st.integers(0, 10**6))
def test_cover_incomplete_random(seed):
    rng = random.Random(seed)
    pts = [q(rng.randint(-300, 300), rng.randint(1, 100)) for _ in range(5)] + [INF]
    fam = random_cut_pairs(SQRT2, rng, rng.randint(1, 4))
    rep = cover_incomplete(SQRT2, pts, [fam])
    assert rep.ok
    m = rep.missed[0][1]
    assert not any(member(complement_member(a, b), q(m)) for a, b in fam)


@given(st.sampled_from([Z, Q, lex(Z, Z)]).flatmap(
    lambda g: st.lists(st.integers(-50, 50), min_size=1, max_size=5).map(
        lambda xs: [elem(g, *([x] + [0] * (len(leaves(g)) - 1))) for x in xs])))
def test_cover_no_smallest_random(fam):
    g = fam[0].group
    rep = cover_no_smallest(g, fam + [INF], [fam])
    assert rep.ok
    m = rep.missed[0][1]
    assert all(not member(ray_above(x), m) for x in fam)
