"""Shared hypothesis strategies."""
from fractions import Fraction

from hypothesis import strategies as st

from valtop.groups import INF, GroupElem, Q, Z, leaves, lex
from valtop.opensets import Interval, OpenSet

SMALL_INT = st.integers(-20, 20)
SMALL_RAT = st.builds(Fraction, st.integers(-40, 40), st.integers(1, 6))

GROUPS = [Z, Q, lex(Z, Z), lex(Q, Z), lex(Z, Q)]


def elems(g):
    coords = [SMALL_INT if k == "Z" else SMALL_RAT for k in leaves(g)]
    return st.tuples(*coords).map(lambda c: GroupElem(g, c))


def ext_elems(g):
    return st.one_of(elems(g), st.just(INF))


@st.composite
def opensets(draw, g, max_parts=3):
    n = draw(st.integers(0, max_parts))
    parts = []
    for _ in range(n):
        kind = draw(st.sampled_from(["bounded", "below", "above", "above_inf", "all"]))
        a, b = sorted([draw(elems(g)), draw(elems(g))])
        if kind == "bounded":
            parts.append(Interval(a, b))
        elif kind == "below":
            parts.append(Interval(None, a))
        elif kind == "above":
            parts.append(Interval(a, None))
        elif kind == "above_inf":
            parts.append(Interval(a, None, True))
        else:
            parts.append(Interval(None, None, draw(st.booleans())))
    return OpenSet(g, tuple(parts))
