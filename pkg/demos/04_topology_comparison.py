"""Comparing the order, circle and compactification topologies.

Run with ``python3 demos/04_topology_comparison.py``.
"""
from fractions import Fraction

from valtop.closeness import check_P1_failure, check_P2
from valtop.groups import INF, Q, Z, elem, lex
from valtop.opensets import A1, A2, A3, Interval, OpenSet
from valtop.topocompare import (
    SQRT2, cover_incomplete, cover_no_smallest, gamma_prime_equality, is_discrete, refines,
)

print("Discreteness means a smallest positive element:")
for g in (Z, Q, lex(Z, Z), lex(Z, Q), lex(Q, Z)):
    print(f"  {str(g):9} {is_discrete(g)}")

print("\nRefinement on the sample suite:")
for g in (Z, Q, lex(Z, Z)):
    for fine, coarse in ((A1, A2), (A2, A3)):
        v = refines(fine, coarse, g)
        extra = f"strictly finer, e.g. {v.strict}" if v.strict else "no difference on samples"
        print(f"  {fine} refines {coarse} over {g}: {v.consistent}; {extra}")
print("  On the non-negative part, order and circle agree:",
      all(gamma_prime_equality(g).equal for g in (Z, Q, lex(Z, Z))))

print("\nOrder separation of a point from infinity:")
w = check_P2(A1, elem(Z, 0), INF)
print(f"  order topology: U = {w.U} lies below U' = {w.U2}")
r = check_P2(A2, elem(Z, 0), INF)
nbhd = OpenSet(Z, (Interval(None, elem(Z, -2)), Interval(elem(Z, 3), None, True)))
U = OpenSet(Z, (Interval(None, elem(Z, 1)),))
u, u2 = r.counter(U, nbhd)
print(f"  circle topology: any neighbourhood of inf such as {nbhd} holds {u2} < {u}")

print("\nAddition is not continuous at (inf, inf) for the circle topology:")
fail = check_P1_failure(A2, Q)
V = OpenSet(Q, (Interval(None, elem(Q, Fraction(-1, 2))), Interval(elem(Q, Fraction(1, 2)), None, True)))
w = fail.witness(V, V)
print(f"  U = {fail.U}; V = V' = {V}; gamma = {w.gamma} gives 0 in V + V'")

print("\nCovers with no finite subcover:")
rep = cover_no_smallest(Q, [elem(Q, 3)], [[elem(Q, -1), elem(Q, -10)]])
print(f"  ]x,inf] over Q: the subfamily x in {{-1, -10}} misses {rep.missed[0][1]}")
rep = cover_incomplete(SQRT2, [elem(Q, 3), elem(Q, 0)], [[(Fraction(7, 5), Fraction(3, 2))]])
print("  {inf} u Q minus [x0,x1] with x0^2 < 2 < x1^2:")
for p, (x0, x1) in rep.covered:
    print(f"    point {p} lies in the member [x0, x1] = [{x0}, {x1}]")
print(f"  the member [7/5, 3/2] misses {rep.missed[0][1]}")
