"""Comparing the order, circle and one-point-compactification topologies.

Refinement is decided on a finite, versioned suite of representable open
sets.  The two non-compactness arguments are turned into explicit covers:
every sampled point gets a member containing it, and every sampled finite
subfamily gets a point it misses.
"""
from __future__ import annotations

import itertools
import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import sympy

from .groups import (
    INF, ExtValue, GroupElem, GroupType, MonoidSpec, NonNegative, Q, Z, format_value,
    is_trivial, leaves, smallest_positive, unit, zero,
)
from .opensets import (
    A1, A2, Interval, OpenSet, Topology, closed_points, interval, is_open_in,
    member, open_complement, ray_above, ray_below, singleton,
)
from .rings import QX, ParseError, parse_elem

SUITE_VERSION = "1"


# --------------------------------------------------------------------------
# discreteness
# --------------------------------------------------------------------------


def is_discrete(g: GroupType) -> bool:
    """Whether points of Gamma are open in the order topology.

    This holds iff Gamma has a smallest positive element; the trivial group
    is discrete as well.
    """
    return is_trivial(g) or smallest_positive(g) is not None


def _grid(g: GroupType, step_q: Fraction, span: int = 3) -> list[GroupElem]:
    axes = []
    for kind in leaves(g):
        if kind == "Z":
            axes.append([Fraction(k) for k in range(-span, span + 1)])
        else:
            n = int(span / step_q)
            axes.append([k * step_q for k in range(-n, n + 1)])
    return [GroupElem(g, c) for c in itertools.product(*axes)]


def singleton_open_oracle(g: GroupType) -> bool:
    """Grid search for an interval ``]-e, e[`` containing no point but 0.

    Radii come from a coarse grid (step 1/8 on Q coordinates) and the
    test points from a finer one (step 1/64), so in a dense direction every
    candidate radius catches a nonzero test point.
    """
    if is_trivial(g):
        return True
    z = zero(g)
    # both grids are symmetric about 0, so ]-e, e[ misses the fine grid
    # exactly when e is at most the least positive fine point
    least = min(x for x in _grid(g, Fraction(1, 64), span=1) if x > z)
    return any(z < e <= least for e in _grid(g, Fraction(1, 8), span=1))


# --------------------------------------------------------------------------
# refinement on samples
# --------------------------------------------------------------------------


@dataclass
class RefineVerdict:
    fine: Topology
    coarse: Topology
    consistent: bool
    refuted: OpenSet | None = None
    strict: OpenSet | None = None
    checked: int = 0

    @property
    def equal(self) -> bool:
        return self.consistent and self.strict is None


def _sample_points(g: GroupType, nonneg: bool) -> list[GroupElem]:
    if is_trivial(g):
        return [zero(g)]
    n = len(leaves(g))
    if n == 1:
        raw = [0, 5, -2, 3, 7, -5] if g == Z else [0, 5, Fraction(-1, 2), Fraction(1, 3), 7, -5]
        pts = [GroupElem(g, (c,)) for c in raw]
    else:
        pad = (0,) * (n - 2)
        raw = [(0, 0), (5, 0), (0, -3), (0, 1), (1, -1), (-1, 2)]
        pts = [GroupElem(g, (a,) + pad + (b,)) for a, b in raw]
    if nonneg:
        pts = [p for p in pts if p >= zero(g)] + [p + p + unit(g) for p in pts if p > zero(g)]
    return list(dict.fromkeys(pts))


def standard_samples(g: GroupType, monoid: MonoidSpec | None = None) -> list[OpenSet]:
    """The versioned sample suite (about 40 sets).

    Whole space, rays, bounded intervals, two-ray sets, complements of finite
    sets, punctured spaces and a few unions, all built from six sample points.
    """
    nonneg = isinstance(monoid, NonNegative)
    pts = _sample_points(g, nonneg)
    out = [OpenSet.everything(g), OpenSet.finite(g), OpenSet.empty(g)]
    if is_trivial(g):
        z = zero(g)
        return out + [ray_above(z), ray_below(z, g)]
    for p in pts:
        out += [ray_above(p), ray_above(p, inf=False), ray_below(p)]
    srt = sorted(pts)
    two_ray_pairs = [(0, 1)] + [(i, j) for i, j in ((0, 0), (1, 3), (2, 4), (0, 5)) if j < len(pts)]
    for i, j in two_ray_pairs:
        lo, hi = sorted((pts[i], pts[j]))
        out.append(OpenSet(g, (Interval(None, lo), Interval(hi, None, True))))
    for a, b in zip(srt, srt[1:]):
        out.append(interval(g, a, b))
    out.append(interval(g, srt[0], srt[-1]))
    out.append(open_complement(closed_points(g, pts[:2])))
    out.append(open_complement(closed_points(g, pts)))
    out.append(ray_below(srt[1]) | ray_above(srt[-2]))
    out.append(interval(g, srt[0], srt[1]) | ray_above(srt[-1], inf=False))
    if is_discrete(g):
        out += [singleton(p) for p in pts[:3]]
    else:
        u = unit(g)
        out += [interval(g, p - u, p + u) for p in pts[:3]]
    return list(dict.fromkeys(out))


def refines(fine: Topology, coarse: Topology, g: GroupType, samples: Sequence[OpenSet] | None = None,
            monoid: MonoidSpec | None = None) -> RefineVerdict:
    """Is every sample that is open in ``coarse`` also open in ``fine``?

    ``strict`` records the first sample open in ``fine`` but not ``coarse``.
    """
    if samples is None:
        samples = standard_samples(g, monoid)
    verdict = RefineVerdict(fine, coarse, True)
    for U in samples:
        verdict.checked += 1
        in_fine = is_open_in(U, fine, monoid)
        in_coarse = is_open_in(U, coarse, monoid)
        if in_coarse and not in_fine and verdict.refuted is None:
            verdict.consistent = False
            verdict.refuted = U
        if in_fine and not in_coarse and verdict.strict is None:
            verdict.strict = U
    return verdict


@dataclass
class EqualityVerdict:
    equal: bool
    forward: RefineVerdict
    backward: RefineVerdict


def gamma_prime_equality(g: GroupType, samples: Sequence[OpenSet] | None = None) -> EqualityVerdict:
    """Order vs circle topology on the non-negative part, both directions."""
    m = NonNegative(g)
    if samples is None:
        samples = standard_samples(g, m)
    fw = refines(A1, A2, g, samples, m)
    bw = refines(A2, A1, g, samples, m)
    return EqualityVerdict(fw.consistent and bw.consistent, fw, bw)


# --------------------------------------------------------------------------
# cover with no finite subcover: upper rays
# --------------------------------------------------------------------------


@dataclass
class CoverReport:
    covered: list = field(default_factory=list)  # (point, member)
    missed: list = field(default_factory=list)  # (subfamily, point)
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def cover_no_smallest(g: GroupType, points: Sequence[ExtValue],
                      subfamilies: Sequence[Sequence[GroupElem]]) -> CoverReport:
    """The cover ``U_x = ]x, inf]`` of Gamma_inf, indexed by x in Gamma.

    A point p is covered by ``U_{p - s}``; a finite subfamily misses
    ``min x - s``, where s is the group's unit step.
    """
    if is_trivial(g):
        raise ValueError("the trivial group has a smallest element")
    s = unit(g)
    rep = CoverReport()
    for p in points:
        x = zero(g) if p is INF else p - s
        U = ray_above(x)
        rep.covered.append((p, U))
        if not member(U, p):
            rep.failures.append(f"{format_value(p)} not in {U}")
    for fam in subfamilies:
        if not fam:
            raise ValueError("empty subfamily")
        m = min(fam) - s
        rep.missed.append((tuple(fam), m))
        if any(member(ray_above(x), m) for x in fam):
            rep.failures.append(f"{format_value(m)} is covered by the subfamily")
    return rep


# --------------------------------------------------------------------------
# cover with no finite subcover: complements of bounded intervals
# --------------------------------------------------------------------------


_ATOM = re.compile(r"^(.*?)(<=|>=|<|>)(.*)$")


def _eval_poly(p, q: Fraction) -> Fraction:
    return sum((c * q**e[0] for e, c in p.terms), Fraction(0))


@dataclass(frozen=True)
class CutSet:
    """A bounded, non-empty ``S`` inside Q, given by polynomial inequalities.

    ``witness`` lies in S, ``bound`` is an upper bound, and ``sup`` is the
    exact (algebraic) supremum of S over the reals.  Being an upper bound is
    decided by comparing with ``sup`` exactly.
    """

    text: str
    atoms: tuple  # ((poly, op), ...) meaning poly op 0
    witness: Fraction
    bound: Fraction
    sup: object  # sympy number

    def __contains__(self, q) -> bool:
        return _holds(self.atoms, Fraction(q))

    def is_upper_bound(self, q) -> bool:
        return bool(sympy.Rational(Fraction(q).numerator, Fraction(q).denominator) >= self.sup)

    @classmethod
    def from_expression(cls, text: str) -> CutSet:
        """Parse ``<poly> <op> <poly> and ...`` in the variable q."""
        atoms = []
        conds = []
        q = sympy.Symbol("q", real=True)
        for clause in re.split(r"\band\b", text):
            m = _ATOM.match(clause.strip())
            if not m:
                raise ValueError(f"cannot parse condition {clause.strip()!r}")
            lhs, op, rhs = m.groups()
            try:
                p = parse_elem(f"({lhs.replace('q', 'x')})-({rhs.replace('q', 'x')})", QX)
            except ParseError as exc:
                raise ValueError(f"bad polynomial in {clause.strip()!r}: {exc}") from None
            atoms.append((p, op))
            expr = sum(sympy.Rational(c.numerator, c.denominator) * q**e[0] for e, c in p.terms)
            conds.append({"<": expr < 0, "<=": expr <= 0, ">": expr > 0, ">=": expr >= 0}[op])
        region = sympy.Intersection(*[sympy.solveset(c, q, sympy.S.Reals) for c in conds])
        if region.is_empty:
            raise ValueError(f"{text!r} describes the empty set")
        sup = region.sup
        if sup.is_infinite:
            raise ValueError(f"{text!r} is not bounded above")
        if sup.is_rational:
            raise ValueError(f"{text!r} has the rational supremum {sup}")
        inf = region.inf
        lo = sympy.floor(inf) if inf.is_finite else sympy.floor(sup) - 1
        witness = _find_member(atoms, Fraction(int(lo)), Fraction(int(sympy.ceiling(sup))))
        bound = Fraction(int(sympy.floor(sup)) + 1)
        return cls(text, tuple(atoms), witness, bound, sup)


def _holds(atoms, q: Fraction) -> bool:
    for p, op in atoms:
        v = _eval_poly(p, q)
        if not {"<": v < 0, "<=": v <= 0, ">": v > 0, ">=": v >= 0}[op]:
            return False
    return True


def _find_member(atoms, lo: Fraction, hi: Fraction) -> Fraction:
    """A simple rational of S in [lo, hi], by increasing denominators."""
    for den in range(1, 1025):
        for num in range(int(lo * den), int(hi * den) + 1):
            if _holds(atoms, Fraction(num, den)):
                return Fraction(num, den)
    raise ValueError("no rational member found")


SQRT2 = CutSet.from_expression("q > 0 and q^2 < 2")


def cut_member_above(S: CutSet, p: Fraction, steps: int = 400) -> Fraction:
    """Some element of S above p (p is not an upper bound of S)."""
    lo, hi = Fraction(p), S.bound
    for _ in range(steps):
        mid = (lo + hi) / 2
        if mid in S and mid > p:
            return mid
        if S.is_upper_bound(mid):
            hi = mid
        else:
            lo = mid
    raise ValueError(f"no element of S found above {p}")


def cut_bound_below(S: CutSet, p: Fraction, steps: int = 400) -> Fraction:
    """An upper bound of S strictly below p (p is an upper bound of S)."""
    lo, hi = S.witness, Fraction(p)
    for _ in range(steps):
        mid = (lo + hi) / 2
        if S.is_upper_bound(mid):
            return mid
        lo = mid
    raise ValueError(f"no upper bound of S found below {p}")


def complement_member(x0: Fraction, x1: Fraction) -> OpenSet:
    """``{inf} u Q minus [x0, x1]``."""
    return OpenSet(Q, (Interval(None, GroupElem(Q, (x0,))), Interval(GroupElem(Q, (x1,)), None, True)))


def covers(S: CutSet, p: ExtValue, x0, x1) -> bool:
    """Whether ``U_{x0}^{x1}`` is a legal member containing p."""
    x0, x1 = Fraction(x0), Fraction(x1)
    if x0 not in S or not S.is_upper_bound(x1):
        return False
    if p is INF:
        return True
    v = p.coords[0] if isinstance(p, GroupElem) else Fraction(p)
    return v < x0 or v > x1


def cover_incomplete(S: CutSet, points: Sequence[ExtValue], subfamilies: Sequence[Sequence[tuple]]) -> CoverReport:
    """The cover of Q_inf by ``{inf} u Q minus [x0, x1]`` with x0 in S and x1 >= S.

    A point above S uses an upper bound below it; any other point uses an
    element of S above it.  A finite subfamily misses the midpoint of the
    largest x0 and the smallest x1.
    """
    for q in (S.witness,):
        if q not in S:
            raise ValueError(f"witness {q} is not in S")
    if not S.is_upper_bound(S.bound) or S.bound in S:
        raise ValueError("declared bound is not an upper bound")
    rep = CoverReport()
    for p in points:
        if p is INF:
            x0, x1 = S.witness, S.bound
        else:
            v = p.coords[0] if isinstance(p, GroupElem) else Fraction(p)
            if S.is_upper_bound(v):
                x0, x1 = S.witness, cut_bound_below(S, v)
            else:
                x0, x1 = cut_member_above(S, v), S.bound
        rep.covered.append((p, (x0, x1)))
        if not covers(S, p, x0, x1):
            rep.failures.append(f"{p} is not covered by [{x0}, {x1}]")
    for fam in subfamilies:
        if not fam:
            raise ValueError("empty subfamily")
        for x0, x1 in fam:
            if Fraction(x0) not in S or not S.is_upper_bound(x1):
                raise ValueError(f"({x0}, {x1}) is not a member of the cover")
        m = (max(Fraction(a) for a, _ in fam) + min(Fraction(b) for _, b in fam)) / 2
        rep.missed.append((tuple(fam), m))
        if any(member(complement_member(Fraction(a), Fraction(b)), GroupElem(Q, (m,))) for a, b in fam):
            rep.failures.append(f"{m} is covered by the subfamily")
    return rep


def random_cut_pairs(S: CutSet, rng: random.Random, n: int) -> list[tuple[Fraction, Fraction]]:
    """Random members ``(x0, x1)`` of the cover for S."""
    out = []
    while len(out) < n:
        den = rng.randint(1, 60)
        a = Fraction(rng.randint(int(S.witness * den) - 3 * den, int(S.bound * den)), den)
        b = Fraction(rng.randint(int(S.witness * den), int(S.bound * den) + 3 * den), den)
        if a in S and S.is_upper_bound(b):
            out.append((a, b))
    return out
