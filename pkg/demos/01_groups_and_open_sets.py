"""Ordered groups, the point at infinity, and three topologies on Gamma_inf.

Run with ``python3 demos/01_groups_and_open_sets.py``.
"""
from fractions import Fraction

from valtop.groups import INF, Q, Z, between, elem, format_value, lex, smallest_positive
from valtop.opensets import (
    A1, A2, A3, ClosedSet, Interval, OpenSet, compactness_predicate, interval, is_open_in,
    minkowski_hull, ray_above, separate_below,
)

ZZ2 = lex(Z, Z)

print("Lexicographic order compares the first coordinate first:")
a, b = elem(ZZ2, 1, -5), elem(ZZ2, 0, 100)
print(f"  {format_value(a)} > {format_value(b)}: {a > b}")
print(f"  smallest positive element of {ZZ2}: {format_value(smallest_positive(ZZ2))}")
print(f"  Q has one? {smallest_positive(Q)}")

print("\nInfinity sits above everything and absorbs addition:")
print(f"  3 + inf = {format_value(elem(Z, 3) + INF)}")
print(f"  a point strictly between 3 and inf: {format_value(between(elem(Z, 3), INF))}")

print("\nSums of open sets. Over Z the bounds tighten by one step:")
print(f"  ]6,inf] + ]4,inf] over Z = {minkowski_hull(ray_above(elem(Z, 6)), ray_above(elem(Z, 4)))}")
print(f"  ]6,inf] + ]4,inf] over Q = {minkowski_hull(ray_above(elem(Q, 6)), ray_above(elem(Q, 4)))}")

print("\nWhich topologies accept which sets?")
samples = {
    "]0,inf]": ray_above(elem(Z, 0)),
    "]-inf,0[ u ]5,inf] over Z": OpenSet(Z, (Interval(None, elem(Z, 0)), Interval(elem(Z, 5), None, True))),
    "]-inf,0[ u ]5,inf] over Q": OpenSet(Q, (Interval(None, elem(Q, 0)), Interval(elem(Q, 5), None, True))),
    "]1/2,3[ over Q": interval(Q, elem(Q, Fraction(1, 2)), elem(Q, 3)),
}
for name, U in samples.items():
    flags = ", ".join(f"{t}: {is_open_in(U, t)}" for t in (A1, A2, A3))
    print(f"  {name:28} {flags}")

print("\nThe last column differs because [0,5] is compact over Z but not over Q:")
print(f"  Z: {compactness_predicate(ClosedSet(Z, ((elem(Z, 0), elem(Z, 5)),)), Z)}")
print(f"  Q: {compactness_predicate(ClosedSet(Q, ((elem(Q, 0), elem(Q, 5)),)), Q)}")

print("\nOrder separation, U below U':")
for x, y in ((elem(Z, 3), elem(Z, 4)), (elem(Q, 0), elem(Q, 1)), (elem(Z, 0), INF)):
    U, U2 = separate_below(x, y)
    print(f"  {format_value(x)} < {format_value(y)}: U = {U}, U' = {U2}")
