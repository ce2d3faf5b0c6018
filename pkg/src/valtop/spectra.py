"""Membership in the subbasic opens of the Zariski, patch and valuation
spectrum topologies, the sign map, and normalisation of centred valuations."""
from __future__ import annotations

from enum import Enum
from fractions import Fraction

from .groups import INF, GroupElem, Q, leaves, zero
from .rings import Frac, Poly2, RingSpec
from .valuations import (
    Monomial, NotCentered, Scaled, Valuation, evaluate, evaluate_fraction, is_centered,
    maximal_ideal_value,
)


class Sign(Enum):
    ZERO = "0"
    MINUS = "-"
    PLUS = "+"


def sign_map(nu: Valuation, a) -> Sign:
    """0, - or + by comparing ``nu(a)`` with 0; an infinite value counts as +."""
    v = evaluate_fraction(nu, a) if isinstance(a, Frac) else evaluate(nu, a)
    if v is INF:
        return Sign.PLUS
    z = zero(v.group)
    if v == z:
        return Sign.ZERO
    return Sign.PLUS if v > z else Sign.MINUS


def zariski_member(nu: Valuation, a) -> bool:
    """``nu(a) >= 0``."""
    return sign_map(nu, a) is not Sign.MINUS


def patch_member(nu: Valuation, a, b) -> bool:
    """``nu(a) >= 0`` and ``nu(b) > 0``."""
    return zariski_member(nu, a) and sign_map(nu, b) is Sign.PLUS


def valspec_member(nu: Valuation, a, b) -> bool:
    """``nu(a) >= nu(b) != inf`` for ring elements a, b."""
    for x in (a, b):
        if isinstance(x, Frac):
            raise ValueError("valuation spectrum conditions take ring elements, not fractions")
    vb = evaluate(nu, b)
    return vb is not INF and evaluate(nu, a) >= vb


def _rational(nu: Valuation) -> bool:
    return leaves(nu.group) in (("Z",), ("Q",))


def normalize(nu: Valuation, ring: RingSpec = Poly2()) -> Valuation:
    """Rescale a centred rational-valued valuation so that ``nu(m) = 1``.

    Monomial valuations stay monomial; anything else is wrapped in
    :class:`Scaled`.
    """
    if not _rational(nu):
        raise ValueError(f"{nu} is not rational-valued")
    if not is_centered(nu, ring):
        raise NotCentered(f"{nu} is not centred on {ring}")
    m = Fraction(maximal_ideal_value(nu, ring).coords[0])
    if m == 1:
        return nu
    if isinstance(nu, Monomial):
        wx, wy = (Fraction(w.coords[0]) / m for w in nu.w)
        g = Q if (wx.denominator, wy.denominator) != (1, 1) or nu.group == Q else nu.group
        return Monomial((GroupElem(g, (wx,)), GroupElem(g, (wy,))))
    if isinstance(nu, Scaled):
        return Scaled(nu.base, nu.factor / m)
    return Scaled(nu, 1 / m)


def is_normalized(nu: Valuation, ring: RingSpec = Poly2()) -> bool:
    return is_centered(nu, ring) and maximal_ideal_value(nu, ring) == GroupElem(nu.group, (1,))


def weak_member(nu: Valuation, a, alpha, above: bool = True) -> bool:
    """``nu(a) > alpha`` (above) or ``nu(a) < alpha`` (below); alpha may be INF."""
    if not _rational(nu) or not is_normalized(nu):
        raise ValueError(f"{nu} is not normalised")
    v = evaluate(nu, a)
    if alpha is INF:
        return not above and v is not INF
    if v is INF:
        return above
    x = Fraction(v.coords[0])
    t = Fraction(alpha.coords[0]) if isinstance(alpha, GroupElem) else Fraction(alpha)
    return x > t if above else x < t
