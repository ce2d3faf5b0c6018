"""Concrete valuation families, function tables and axiom checking.

Every family here has the shape

    nu(sum c_e x^e1 y^e2) = min_e ( v_p(c_e) * u + e1 * w_x + e2 * w_y )

for a prime ``p`` (or the trivial valuation on Q), a group element ``u`` and
weights ``w_x, w_y``.  Z, Q and Q[x] embed into Q[x,y], so each family is
defined on every supported ring.  Fractions are valued by
``nu(num) - nu(den)``.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .groups import (
    INF, ExtValue, Full, GroupElem, GroupMismatch, GroupType, MonoidSpec, Q, Z,
    elem, in_monoid, leaves, lex, parse_group, zero,
)
from .rings import (
    Frac, Poly2, RingSpec, format_elem, is_zero, one, ring_of, to_poly, zero_elem,
)


class DomainError(ValueError):
    """The valuation cannot be applied to this element."""


class DenominatorInSupport(DomainError):
    pass


class NotCentered(ValueError):
    pass


class UnsupportedRing(ValueError):
    pass


class ValuationSpecError(ValueError):
    pass


# --------------------------------------------------------------------------
# families
# --------------------------------------------------------------------------


def vp(n, p: int) -> int:
    """p-adic valuation of a nonzero integer or rational, by repeated division."""
    f = Fraction(n)
    if f == 0:
        raise ValueError("v_p(0) is infinite")
    k = 0
    num, den = f.numerator, f.denominator
    while num % p == 0:
        num //= p
        k += 1
    while den % p == 0:
        den //= p
        k -= 1
    return k


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p**0.5) + 1))


class Valuation:
    """Common evaluation for all families.

    Subclasses provide ``group``, ``prime`` (or None), ``coef_unit`` (the
    value of an element with ``v_p = 1``) and ``weights``.
    """

    group: GroupType
    prime: int | None = None

    @property
    def coef_unit(self) -> GroupElem:
        return zero(self.group)

    @property
    def weights(self) -> tuple[GroupElem, GroupElem]:
        z = zero(self.group)
        return z, z

    def __call__(self, a) -> ExtValue:
        return evaluate(self, a)

    def _poly_value(self, poly) -> ExtValue:
        if poly.is_zero():
            return INF
        u = self.coef_unit
        wx, wy = self.weights
        best = None
        for (ex, ey), c in poly.terms:
            v = wx.scale(ex) + wy.scale(ey)
            if self.prime is not None:
                v = v + u.scale(vp(c, self.prime))
            if best is None or v < best:
                best = v
        return best


@dataclass(frozen=True, eq=True)
class PAdic(Valuation):
    p: int

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    group = Z

    @property
    def prime(self):
        return self.p

    @property
    def coef_unit(self):
        return elem(Z, 1)

    def __str__(self):
        return f"padic({self.p})"


@dataclass(frozen=True, eq=True)
class XAdic(Valuation):
    group = Z

    @property
    def weights(self):
        return elem(Z, 1), elem(Z, 0)

    def __str__(self):
        return "xadic"


@dataclass(frozen=True, eq=True)
class Gauss(Valuation):
    """``min(v_p(c_i) + i * gamma)``; on Q[x,y] both variables get weight gamma."""

    p: int
    gamma: Fraction

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        object.__setattr__(self, "gamma", Fraction(self.gamma))
        if self.gamma <= 0:
            raise ValueError("gamma must be positive")

    group = Q

    @property
    def prime(self):
        return self.p

    @property
    def coef_unit(self):
        return elem(Q, 1)

    @property
    def weights(self):
        w = elem(Q, self.gamma)
        return w, w

    def __str__(self):
        return f"gauss(p={self.p},gamma={self.gamma})"


@dataclass(frozen=True, eq=True)
class Monomial(Valuation):
    """Weights on x and y in any group; trivial on the coefficients."""

    w: tuple[GroupElem, GroupElem]

    def __post_init__(self):
        if len(self.w) != 2:
            raise ValueError("monomial valuations take two weights")
        if self.w[0].group != self.w[1].group:
            raise GroupMismatch("weights over different groups")

    @property
    def group(self):
        return self.w[0].group

    @property
    def weights(self):
        return self.w

    def __str__(self):
        ws = ",".join(_format_weight(x) for x in self.w)
        g = self.group
        if _infer_group([_weight_coords(x) for x in self.w]) != g:
            return f"monomial(w=[{ws}],group={g})"
        return f"monomial(w=[{ws}])"


@dataclass(frozen=True, eq=True)
class Trivial(Valuation):
    group: GroupType = Z

    def __str__(self):
        return "trivial" if self.group == Z else f"trivial(group={self.group})"


@dataclass(frozen=True, eq=True)
class Scaled(Valuation):
    """``factor * base`` for a rational-valued base and a rational factor > 0."""

    base: Valuation
    factor: Fraction

    def __post_init__(self):
        object.__setattr__(self, "factor", Fraction(self.factor))
        if self.factor <= 0:
            raise ValueError("scaling factor must be positive")
        if leaves(self.base.group) not in (("Z",), ("Q",)):
            raise ValueError("only rational-valued valuations can be scaled")

    group = Q

    @property
    def prime(self):
        return self.base.prime

    @property
    def coef_unit(self):
        return _to_q(self.base.coef_unit).scale(self.factor)

    @property
    def weights(self):
        wx, wy = self.base.weights
        return _to_q(wx).scale(self.factor), _to_q(wy).scale(self.factor)

    def __str__(self):
        return f"scaled(c={self.factor},{self.base})"


def _to_q(x: GroupElem) -> GroupElem:
    return GroupElem(Q, x.coords)


# --------------------------------------------------------------------------
# evaluation
# --------------------------------------------------------------------------


def evaluate(nu: Valuation, a) -> ExtValue:
    """``nu(a)`` for an element of any supported ring."""
    if isinstance(a, Frac):
        return evaluate_fraction(nu, a)
    try:
        poly = to_poly(a, 2)
    except Exception as exc:
        raise DomainError(f"{nu} is not defined on {a!r}: {exc}") from None
    return nu._poly_value(poly)


def evaluate_fraction(nu: Valuation, f) -> ExtValue:
    if not isinstance(f, Frac):
        return evaluate(nu, f)
    den = evaluate(nu, f.den)
    if den is INF:
        raise DenominatorInSupport(f"{nu}({format_elem(f.den)}) is infinite")
    num = evaluate(nu, f.num)
    if num is INF:
        return INF
    return num - den


def coerce(x: ExtValue, g: GroupType) -> ExtValue:
    """View a value in group ``g`` (Z and Q values convert when exact)."""
    if x is INF or x.group == g:
        return x
    if leaves(x.group) in (("Z",), ("Q",)) and leaves(g) in (("Z",), ("Q",)):
        try:
            return GroupElem(g, x.coords)
        except ValueError:
            pass
    raise GroupMismatch(f"{x} in {x.group} has no image in {g}")


# --------------------------------------------------------------------------
# local-ring notions on Q[x,y]
# --------------------------------------------------------------------------


def _require_local(R: RingSpec):
    if not isinstance(R, Poly2):
        raise UnsupportedRing(f"centredness is defined on Q[x,y] only, not {R}")


def maximal_ideal_value(nu: Valuation, R: RingSpec = Poly2()) -> ExtValue:
    """``nu(m)`` as the minimum over the generators x and y."""
    _require_local(R)
    x = to_poly_var(0)
    y = to_poly_var(1)
    return min(evaluate(nu, x), evaluate(nu, y))


def to_poly_var(i: int):
    from .rings import Poly

    return Poly.var(2, i)


def is_centered(nu: Valuation, R: RingSpec = Poly2()) -> bool:
    """Non-negative on Q[x,y] and positive on x and y.

    Non-negativity on the whole ring holds iff the valuation is trivial on Q
    and both weights are >= 0, since every element is a sum of monomials.
    """
    _require_local(R)
    if nu.prime is not None and nu.coef_unit != zero(nu.group):
        return False
    z = zero(nu.group)
    if any(w < z for w in nu.weights):
        return False
    return maximal_ideal_value(nu, R) > z


def equivalent_on(nu: Valuation, mu: Valuation, pairs: Iterable[tuple]) -> bool:
    """Whether ``nu(a) > nu(b)`` iff ``mu(a) > mu(b)`` on every given pair."""
    for a, b in pairs:
        na, nb = evaluate(nu, a), evaluate(nu, b)
        ma, mb = evaluate(mu, a), evaluate(mu, b)
        if (na > nb) != (ma > mb) or (nb > na) != (mb > ma):
            return False
    return True


def scaling_constant(nu: Valuation, mu: Valuation, probes: Iterable) -> Fraction | None:
    """C > 0 with ``nu = C * mu`` on every probe, or None if there is none."""
    for v in (nu, mu):
        if leaves(v.group) not in (("Z",), ("Q",)):
            raise ValueError(f"{v} is not rational-valued")
    ratio = None
    for a in probes:
        n, m = evaluate(nu, a), evaluate(mu, a)
        if n is INF or m is INF:
            if n is not m:
                return None
            continue
        n, m = Fraction(n.coords[0]), Fraction(m.coords[0])
        if m == 0:
            if n != 0:
                return None
            continue
        r = n / m
        if r <= 0 or (ratio is not None and r != ratio):
            return None
        ratio = r
    return Fraction(1) if ratio is None else ratio


# --------------------------------------------------------------------------
# textual forms
# --------------------------------------------------------------------------


def _weight_coords(x: GroupElem):
    return x.coords


def _format_weight(x: GroupElem) -> str:
    if len(x.coords) == 1:
        return str(x.coords[0])
    return "(" + ",".join(str(c) for c in x.coords) + ")"


def _infer_group(weights: Sequence[tuple]) -> GroupType:
    n = len(weights[0])
    kinds = []
    for i in range(n):
        col = [Fraction(w[i]) for w in weights]
        kinds.append(Z if all(c.denominator == 1 for c in col) else Q)
    g = kinds[0]
    for k in kinds[1:]:
        g = lex(g, k)
    return g


def _split_args(body: str) -> list[str]:
    out, depth, cur = [], 0, ""
    for ch in body:
        if ch == "," and depth == 0:
            out.append(cur.strip())
            cur = ""
            continue
        depth += ch in "(["
        depth -= ch in ")]"
        cur += ch
    if cur.strip():
        out.append(cur.strip())
    return out


_CALL = re.compile(r"^\s*([a-z]+)\s*(?:\((.*)\))?\s*$", re.S)


def parse_valuation(text: str) -> Valuation:
    """Parse ``padic(p) | xadic | gauss(p=..,gamma=..) | monomial(w=[..,..]) | trivial``.

    Also accepted: ``monomial(w=[..],group=<group>)``, ``trivial(group=<group>)``
    and ``scaled(c=<rational>,<valuation>)``.
    """
    m = _CALL.match(text)
    if not m:
        raise ValuationSpecError(f"cannot parse valuation {text!r}")
    name, body = m.group(1), m.group(2)
    args = _split_args(body) if body is not None else []
    kw = {}
    pos = []
    for a in args:
        k, sep, v = a.partition("=")
        if sep and re.fullmatch(r"[a-z]+", k.strip()):
            kw[k.strip()] = v.strip()
        else:
            pos.append(a)
    try:
        if name == "padic" and len(pos) == 1 and not kw:
            return PAdic(int(pos[0]))
        if name == "xadic" and not args:
            return XAdic()
        if name == "trivial" and not pos:
            return Trivial(parse_group(kw["group"]) if "group" in kw else Z)
        if name == "gauss" and not pos:
            return Gauss(int(kw["p"]), Fraction(kw["gamma"]))
        if name == "monomial" and not pos:
            raw = kw["w"].strip()
            if not (raw.startswith("[") and raw.endswith("]")):
                raise ValuationSpecError("weights must be a bracketed list")
            items = _split_args(raw[1:-1])
            coords = []
            for it in items:
                it = it.strip()
                if it.startswith("("):
                    coords.append(tuple(Fraction(c) for c in _split_args(it[1:-1])))
                else:
                    coords.append((Fraction(it),))
            g = parse_group(kw["group"]) if "group" in kw else _infer_group(coords)
            return Monomial(tuple(GroupElem(g, c) for c in coords))
        if name == "scaled" and len(pos) == 1:
            return Scaled(parse_valuation(pos[0]), Fraction(kw["c"]))
    except ValuationSpecError:
        raise
    except (KeyError, ValueError, ZeroDivisionError) as exc:
        raise ValuationSpecError(f"bad valuation {text!r}: {exc}") from None
    raise ValuationSpecError(f"unknown valuation {text!r}")


def monomial(wx, wy, g: GroupType | None = None) -> Monomial:
    """Shorthand: ``monomial(2, 3)`` or ``monomial((1, 0), (0, 1), lex(Z, Z))``."""
    cx = wx if isinstance(wx, tuple) else (wx,)
    cy = wy if isinstance(wy, tuple) else (wy,)
    g = g or _infer_group([cx, cy])
    return Monomial((GroupElem(g, cx), GroupElem(g, cy)))


# --------------------------------------------------------------------------
# function tables and the axioms
# --------------------------------------------------------------------------


@dataclass
class FnTable:
    """A finite fragment of a function ``R -> Gamma'``.

    ``entries`` take precedence; other elements fall back to ``backing``
    when one is given.
    """

    ring: RingSpec
    monoid: MonoidSpec
    entries: dict = field(default_factory=dict)
    backing: Valuation | None = None

    def __post_init__(self):
        for a, v in self.entries.items():
            if ring_of(a) != self.ring:
                raise ValueError(f"{format_elem(a)} is not in {self.ring}")
            if not in_monoid(v, self.monoid):
                raise ValueError(f"value {v} of {format_elem(a)} is outside {self.monoid}")

    @property
    def group(self) -> GroupType:
        return self.monoid.group

    def value(self, a) -> ExtValue | None:
        if a in self.entries:
            return self.entries[a]
        if self.backing is not None:
            return coerce(evaluate(self.backing, a), self.group)
        return None

    def __getitem__(self, a) -> ExtValue:
        v = self.value(a)
        if v is None:
            raise KeyError(format_elem(a))
        return v


@dataclass(frozen=True)
class ViolationReport:
    axiom: str  # "V1", "V2" or "V3"
    witnesses: tuple
    values: tuple

    def describe(self) -> str:
        w = ", ".join(format_elem(a) for a in self.witnesses)
        vals = ", ".join(str(v) for v in self.values)
        return f"{self.axiom} at ({w}) with values ({vals})"


def check_axioms(table: FnTable) -> ViolationReport | None:
    """The first violation found, scanning V3, then V1, then V2.

    Pairs ``(a, b)`` range over the table entries in insertion order with
    ``b`` at or after ``a``; the product or sum is looked up in the entries
    and then in the backing valuation.
    """
    R = table.ring
    one_, zero_ = one(R), zero_elem(R)
    g = table.group
    v1 = table.value(one_)
    if v1 is not None and v1 != zero(g):
        return ViolationReport("V3", (one_,), (v1,))
    v0 = table.value(zero_)
    if v0 is not None and v0 is not INF:
        return ViolationReport("V3", (zero_,), (v0,))
    keys = list(table.entries)
    for i, a in enumerate(keys):
        for b in keys[i:]:
            ab = table.value(a * b)
            if ab is None:
                continue
            fa, fb = table.entries[a], table.entries[b]
            if fa + fb != ab:
                return ViolationReport("V1", (a, b), (fa, fb, ab))
    for i, a in enumerate(keys):
        for b in keys[i:]:
            s = table.value(a + b)
            if s is None:
                continue
            fa, fb = table.entries[a], table.entries[b]
            if s < min(fa, fb):
                return ViolationReport("V2", (a, b), (fa, fb, s))
    return None


def recheck(table: FnTable, v: ViolationReport) -> bool:
    """Whether ``v`` is a genuine violation of ``table``."""
    try:
        if v.axiom == "V3":
            (a,) = v.witnesses
            fa = table[a]
            if is_zero(a):
                return fa is not INF
            if a == one(table.ring):
                return fa != zero(table.group)
            return False
        a, b = v.witnesses
        fa, fb = table[a], table[b]
        if v.axiom == "V1":
            return fa + fb != table[a * b]
        if v.axiom == "V2":
            return table[a + b] < min(fa, fb)
    except KeyError:
        return False
    return False


def table_of(nu: Valuation, elements: Iterable, ring: RingSpec, monoid: MonoidSpec | None = None) -> FnTable:
    """The table of ``nu`` on the given elements, with values viewed in the monoid's group."""
    monoid = monoid or Full(nu.group)
    entries = {a: coerce(evaluate(nu, a), monoid.group) for a in elements}
    return FnTable(ring, monoid, entries)


# --------------------------------------------------------------------------
# probe sets
# --------------------------------------------------------------------------

PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73)


def probe_set(g: GroupType) -> list[Valuation]:
    """Valuations whose values all lie in ``g`` (after exact coercion).

    For Z and Q every family appears; for other groups only families that
    can take values there (monomial weights in ``g`` and the trivial one).
    """
    if g == Z:
        probes: list[Valuation] = [PAdic(p) for p in PRIMES]
        probes += [XAdic(), Trivial(Z)]
        probes += [monomial(a, b) for a in range(1, 5) for b in range(0, 5)]
        probes += [Gauss(p, gm) for p in (2, 3, 5) for gm in (1, 2)]
        probes += [Scaled(PAdic(p), 2) for p in (2, 3)]
        return probes
    if g == Q:
        probes = [PAdic(p) for p in PRIMES[:12]]
        probes += [XAdic(), Trivial(Q)]
        probes += [Gauss(p, Fraction(n, d)) for p in (2, 3, 5, 7) for n, d in ((1, 2), (2, 3), (1, 1), (5, 2))]
        probes += [monomial(Fraction(a, 2), Fraction(b, 3)) for a in range(1, 5) for b in range(1, 5)]
        probes += [Scaled(PAdic(p), Fraction(3, 2)) for p in (2, 3, 7)]
        probes += [Scaled(XAdic(), Fraction(1, 3))]
        return probes
    probes = [Trivial(g)]
    n = len(leaves(g))
    grid = [tuple(t) for t in itertools.product(range(0, 3), repeat=n) if any(t)]
    for wx in grid:
        for wy in grid:
            probes.append(Monomial((GroupElem(g, wx), GroupElem(g, wy))))
    return probes
