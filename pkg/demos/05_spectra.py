"""Subbasic opens of the Zariski, patch and valuation spectrum topologies.

Run with ``python3 demos/05_spectra.py``.
"""
from fractions import Fraction

from valtop.rings import QXY, ZZ, FractionsOf, parse_elem
from valtop.spectra import (
    normalize, patch_member, sign_map, valspec_member, weak_member, zariski_member,
)
from valtop.valuations import PAdic, Trivial, monomial

h = parse_elem("3/2", FractionsOf(ZZ))
print("Sign of 3/2 and Zariski membership for p-adic valuations:")
for p in (2, 3, 5, 7):
    nu = PAdic(p)
    print(f"  p = {p}: sign {sign_map(nu, h).value}, nu(3/2) >= 0: {zariski_member(nu, h)}")

print("\nPatch opens ask nu(a) >= 0 and nu(b) > 0:")
for nu, a, b in ((PAdic(2), 3, 2), (PAdic(2), 3, 3), (Trivial(), 1, Fraction(1, 2))):
    print(f"  {nu} with a = {a}, b = {b}: {patch_member(nu, a, b)}")

print("\nThe valuation spectrum uses ring elements only: nu(a) >= nu(b) != inf.")
for a, b in ((4, 2), (2, 0), (1, 2)):
    print(f"  padic(2), a = {a}, b = {b}: {valspec_member(PAdic(2), a, b)}")

print("\nWeak topology on normalised valuations of Q[x,y]:")
nu = normalize(monomial(2, 3))
print(f"  monomial(w=[2,3]) normalises to {nu}")
for s, alpha in (("x^2", Fraction(3, 2)), ("y", Fraction(3, 2)), ("x*y", 2)):
    a = parse_elem(s, QXY)
    print(f"  nu({s}) > {alpha}: {weak_member(nu, a, alpha)}")
