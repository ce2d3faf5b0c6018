"""Concrete valuations on integers, rationals and polynomial rings.

Run with ``python3 demos/02_valuations.py``.
"""
from fractions import Fraction

from valtop.groups import Full, Z, elem, format_value
from valtop.rings import QX, QXY, ZZ, FractionsOf, parse_elem
from valtop.spectra import normalize
from valtop.valuations import (
    FnTable, Gauss, PAdic, XAdic, check_axioms, equivalent_on, evaluate, evaluate_fraction,
    is_centered, maximal_ideal_value, monomial, parse_valuation, table_of,
)

print("Evaluating a few valuations:")
cases = [
    (PAdic(2), 12),
    (PAdic(5), 0),
    (XAdic(), parse_elem("x^3+x^2", QX)),
    (Gauss(2, Fraction(1, 2)), parse_elem("x^2+2*x", QX)),
    (monomial(1, 1), parse_elem("x^2*y+3*y^2", QXY)),
    (parse_valuation("monomial(w=[(1,0),(0,1)])"), parse_elem("x*y^3+y^7", QXY)),
]
for nu, a in cases:
    print(f"  {str(nu):28} at {str(a):12} = {format_value(evaluate(nu, a))}")

print("\nFractions: nu(a/b) = nu(a) - nu(b).")
h = parse_elem("3/2", FractionsOf(ZZ))
for p in (2, 3, 5):
    print(f"  padic({p})(3/2) = {format_value(evaluate_fraction(PAdic(p), h))}")

print("\nCentred valuations on Q[x,y] and their normal form:")
for nu in (monomial(2, 3), monomial(1, 0)):
    if is_centered(nu):
        n = normalize(nu)
        print(f"  {nu}: nu(m) = {format_value(maximal_ideal_value(nu))}, normalised to {n}")
    else:
        print(f"  {nu}: not centred, since y has value 0")

print("\nScaling does not change the valuation up to equivalence:")
pairs = [(a, b) for a in range(1, 30) for b in range(1, 30)]
print(f"  padic(2) ~ scaled(c=3,padic(2)) on {len(pairs)} pairs: "
      f"{equivalent_on(PAdic(2), parse_valuation('scaled(c=3,padic(2))'), pairs)}")
print(f"  padic(2) ~ padic(3): {equivalent_on(PAdic(2), PAdic(3), pairs)}")

print("\nFinite tables and the axioms they break:")
print(f"  padic(2) on 0..12: {check_axioms(table_of(PAdic(2), range(13), ZZ))}")
bad = FnTable(ZZ, Full(Z), {2: elem(Z, 3), 4: elem(Z, 2)})
print(f"  {{2 -> 3, 4 -> 2}}: {check_axioms(bad).describe()}")
