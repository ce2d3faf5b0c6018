"""Representable open subsets of Gamma_inf.

An :class:`OpenSet` is a finite union of open intervals ``]lo, hi[`` whose
endpoints are finite group elements or unbounded, where an upper-unbounded
interval may also contain INF.  Sets are kept in a canonical form (sorted,
disjoint, maximally merged, empty pieces dropped) so equality is structural.

The three natural topologies on Gamma_inf (order, circle and one-point
compactification) plus two auxiliary ones are described by :class:`Topology`
and decided on representable sets by :func:`is_open_in`.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .groups import (
    INF, ExtValue, GroupElem, GroupMismatch, GroupType, MonoidSpec,
    NonNegative, between, format_value, is_trivial, leaves, smallest_positive,
    value_from_json, value_to_json, zero,
)


@dataclass(frozen=True)
class Interval:
    """``{x : lo < x < hi}`` over Gamma, plus INF when ``inf`` is set.

    ``None`` marks an unbounded side.  ``inf`` is only meaningful when ``hi``
    is ``None``.
    """

    lo: GroupElem | None
    hi: GroupElem | None
    inf: bool = False

    def __post_init__(self):
        if self.inf and self.hi is not None:
            raise ValueError("an interval containing INF must be unbounded above")

    def contains(self, x: ExtValue) -> bool:
        if x is INF:
            return self.inf
        return (self.lo is None or self.lo < x) and (self.hi is None or x < self.hi)

    def __str__(self):
        lo = "-inf" if self.lo is None else format_value(self.lo)
        if self.hi is None:
            return f"]{lo},inf]" if self.inf else f"]{lo},+inf["
        return f"]{lo},{format_value(self.hi)}["


def _finite_nonempty(g: GroupType, lo, hi) -> bool:
    if is_trivial(g):
        # the only finite element is 0
        z = zero(g)
        return (lo is None or lo < z) and (hi is None or z < hi)
    if lo is None or hi is None:
        return True
    return lo < hi and between(lo, hi) is not None


def _normalize(g: GroupType, parts: Iterable[Interval]) -> tuple[Interval, ...]:
    kept = []
    for p in parts:
        for end in (p.lo, p.hi):
            if end is not None and end.group != g:
                raise GroupMismatch(f"{end.group} endpoint in a set over {g}")
        if _finite_nonempty(g, p.lo, p.hi) or p.inf:
            kept.append(p)
    kept.sort(key=lambda p: (p.lo is not None, p.lo.coords if p.lo is not None else ()))
    merged: list[Interval] = []
    for p in kept:
        if merged:
            q = merged[-1]
            if q.hi is None or p.lo is None or p.lo < q.hi:
                if q.hi is None or p.hi is None:
                    hi = None
                else:
                    hi = max(q.hi, p.hi)
                merged[-1] = Interval(q.lo, hi, q.inf or p.inf)
                continue
        merged.append(p)
    return tuple(merged)


@dataclass(frozen=True)
class OpenSet:
    group: GroupType
    parts: tuple[Interval, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "parts", _normalize(self.group, self.parts))

    # -- constructors ----------------------------------------------------
    @classmethod
    def of(cls, g: GroupType, *parts: Interval) -> OpenSet:
        return cls(g, tuple(parts))

    @classmethod
    def empty(cls, g: GroupType) -> OpenSet:
        return cls(g, ())

    @classmethod
    def everything(cls, g: GroupType) -> OpenSet:
        """Gamma_inf itself."""
        return cls(g, (Interval(None, None, True),))

    @classmethod
    def finite(cls, g: GroupType) -> OpenSet:
        """Gamma, i.e. Gamma_inf minus INF."""
        return cls(g, (Interval(None, None, False),))

    # -- queries ---------------------------------------------------------
    def __contains__(self, x: ExtValue) -> bool:
        return member(self, x)

    def is_empty(self) -> bool:
        return not self.parts

    @property
    def has_inf(self) -> bool:
        return bool(self.parts) and self.parts[-1].inf

    def __str__(self):
        if not self.parts:
            return "{}"
        return " u ".join(str(p) for p in self.parts)

    def __or__(self, other: OpenSet) -> OpenSet:
        return union(self, other)

    def __and__(self, other: OpenSet) -> OpenSet:
        return intersect(self, other)

    def __le__(self, other: OpenSet) -> bool:
        return is_subset(self, other)


def interval(g: GroupType, lo: ExtValue | None, hi: ExtValue | None, inf: bool = False) -> OpenSet:
    """``]lo, hi[``; ``hi=INF`` means unbounded without INF, ``lo=INF`` is empty."""
    if lo is INF:
        return OpenSet.empty(g)
    if hi is INF:
        hi = None
    return OpenSet(g, (Interval(lo, hi, inf),))


def ray_above(x: GroupElem, inf: bool = True) -> OpenSet:
    """``]x, inf]`` (or ``]x, +inf[`` with ``inf=False``)."""
    return OpenSet(x.group, (Interval(x, None, inf),))


def ray_below(x: ExtValue, g: GroupType | None = None) -> OpenSet:
    """``]-inf, x[``."""
    if x is INF:
        return OpenSet.finite(g)
    return OpenSet(x.group, (Interval(None, x, False),))


def singleton(x: GroupElem) -> OpenSet:
    """``{x}`` as ``]x - s, x + s[``; only possible when points are open."""
    g = x.group
    if is_trivial(g):
        return OpenSet.finite(g)
    s = smallest_positive(g)
    if s is None:
        raise ValueError(f"points are not open in {g}")
    return interval(g, x - s, x + s)


def has_open_points(g: GroupType) -> bool:
    return is_trivial(g) or smallest_positive(g) is not None


def _same_group(U: OpenSet, V: OpenSet):
    if U.group != V.group:
        raise GroupMismatch(f"{U.group} vs {V.group}")


def member(U: OpenSet, x: ExtValue) -> bool:
    if x is not INF and x.group != U.group:
        raise GroupMismatch(f"{x.group} value tested against a set over {U.group}")
    return any(p.contains(x) for p in U.parts)


def union(U: OpenSet, V: OpenSet) -> OpenSet:
    _same_group(U, V)
    return OpenSet(U.group, U.parts + V.parts)


def _meet(p: Interval, q: Interval) -> Interval | None:
    if p.lo is None:
        lo = q.lo
    elif q.lo is None:
        lo = p.lo
    else:
        lo = max(p.lo, q.lo)
    if p.hi is None:
        hi = q.hi
    elif q.hi is None:
        hi = p.hi
    else:
        hi = min(p.hi, q.hi)
    inf = p.inf and q.inf
    if lo is not None and hi is not None and not lo < hi:
        return None
    return Interval(lo, hi, inf)


def intersect(U: OpenSet, V: OpenSet) -> OpenSet:
    _same_group(U, V)
    out = []
    for p in U.parts:
        for q in V.parts:
            m = _meet(p, q)
            if m is not None:
                out.append(m)
    return OpenSet(U.group, tuple(out))


def is_subset(U: OpenSet, V: OpenSet) -> bool:
    return intersect(U, V) == U


def precedes(U: OpenSet, W: OpenSet) -> bool:
    """``U < W`` pointwise: every element of U is below every element of W."""
    _same_group(U, W)
    if U.is_empty() or W.is_empty():
        return True
    floor = W.parts[0].lo
    tail = OpenSet(U.group, (Interval(floor, None, True),))
    return intersect(U, tail).is_empty()


def minkowski_hull(U: OpenSet, V: OpenSet) -> OpenSet:
    """An open superset of ``{u + v}`` built from endpoint sums.

    In groups with a smallest positive element ``s`` the bounds are tightened
    by ``s`` (the least element of ``]a, b[`` is ``a + s``), so singleton
    intervals add up to singleton intervals.  Soundness: whenever the hull is
    inside W, so is every sum.
    """
    _same_group(U, V)
    g = U.group
    if is_trivial(g):
        return _trivial_sum(U, V)
    s = smallest_positive(g)
    out = []
    for p in U.parts:
        for q in V.parts:
            lo = None if p.lo is None or q.lo is None else p.lo + q.lo
            hi = None if p.hi is None or q.hi is None else p.hi + q.hi
            if s is not None:
                lo = None if lo is None else lo + s
                hi = None if hi is None else hi - s
            out.append(Interval(lo, hi, (p.inf or q.inf) and hi is None))
    return OpenSet(g, tuple(out))


def _trivial_sum(U: OpenSet, V: OpenSet) -> OpenSet:
    g = U.group
    z = zero(g)
    pts = {u + v for u in (z, INF) if u in U for v in (z, INF) if v in V}
    parts = []
    if z in pts:
        parts.append(Interval(None, None, INF in pts))
    elif INF in pts:
        parts.append(Interval(z, None, True))
    return OpenSet(g, tuple(parts))


# --------------------------------------------------------------------------
# closed sets and compactness
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class ClosedSet:
    """A finite union of closed intervals ``[lo, hi]`` of Gamma (None = unbounded)."""

    group: GroupType
    parts: tuple[tuple[GroupElem | None, GroupElem | None], ...]

    def is_empty(self) -> bool:
        return not self.parts

    def contains(self, x: GroupElem) -> bool:
        return any((lo is None or lo <= x) and (hi is None or x <= hi) for lo, hi in self.parts)

    def is_bounded_below(self) -> bool:
        return is_trivial(self.group) or all(lo is not None for lo, _ in self.parts)

    def is_bounded_above(self) -> bool:
        return is_trivial(self.group) or all(hi is not None for _, hi in self.parts)

    def is_bounded(self) -> bool:
        return self.is_bounded_below() and self.is_bounded_above()

    def is_finite(self) -> bool:
        if is_trivial(self.group):
            return True
        if not self.is_bounded():
            return False
        discrete = leaves(self.group)[-1] == "Z"
        for lo, hi in self.parts:
            if lo == hi:
                continue
            if not (discrete and lo.coords[:-1] == hi.coords[:-1]):
                return False
        return True

    def __str__(self):
        if not self.parts:
            return "{}"
        bits = []
        for lo, hi in self.parts:
            a = "-inf" if lo is None else format_value(lo)
            b = "+inf" if hi is None else format_value(hi)
            bits.append(f"{{{a}}}" if lo is not None and lo == hi else f"[{a},{b}]")
        return " u ".join(bits)


def closed_points(g: GroupType, points: Iterable[GroupElem]) -> ClosedSet:
    return ClosedSet(g, tuple((p, p) for p in sorted(set(points), key=lambda p: p.coords)))


def complement(U: OpenSet, monoid: MonoidSpec | None = None) -> ClosedSet:
    """The finite part of the carrier not covered by U.

    The carrier is Gamma, or Gamma>=0 for a non-negative monoid.
    """
    g = U.group
    if is_trivial(g):
        z = zero(g)
        return ClosedSet(g, () if member(U, z) else ((z, z),))
    parts = U.parts
    if not parts:
        gaps = [(None, None)]
    else:
        # canonical form: only the first part can be unbounded below and
        # only the last unbounded above
        gaps = [] if parts[0].lo is None else [(None, parts[0].lo)]
        gaps += [(p.hi, q.lo) for p, q in zip(parts, parts[1:])]
        if parts[-1].hi is not None:
            gaps.append((parts[-1].hi, None))
    if isinstance(monoid, NonNegative):
        z = zero(g)
        gaps = [(z if lo is None or lo < z else lo, hi)
                for lo, hi in gaps if hi is None or hi >= z]
    return ClosedSet(g, tuple(gaps))


def compactness_predicate(C: ClosedSet, g: GroupType) -> bool:
    """Whether a closed representable set is compact in the order topology.

    Per group: Z and other groups whose last coordinate is Z carry the
    discrete topology, so compact means finite.  When the last coordinate is
    Q, any nondegenerate closed interval contains a copy of ``[0, 1]`` in Q,
    which is not compact, so again compact means finite.  The trivial group
    is finite.
    """
    if C.group != g:
        raise GroupMismatch(f"{C.group} vs {g}")
    return C.is_finite()


# --------------------------------------------------------------------------
# topologies
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Topology:
    """A topology on Gamma_inf.

    ``A1``/``A2``/``A3`` are the order, circle and one-point-compactification
    topologies.  ``pinned`` keeps the order-open sets that either avoid
    ``point`` or contain a lower and an upper ray (a T1 topology strictly
    coarser than A1).  ``tethered`` keeps the order-open sets that contain
    ``anchor`` whenever they contain ``point`` (not T1).
    """

    kind: str
    point: ExtValue | None = None
    anchor: ExtValue | None = None

    def __str__(self):
        if self.kind == "pinned":
            return f"pinned({format_value(self.point)})"
        if self.kind == "tethered":
            return f"tethered({format_value(self.point)}->{format_value(self.anchor)})"
        return self.kind


A1 = Topology("A1")
A2 = Topology("A2")
A3 = Topology("A3")


def pinned(point: GroupElem) -> Topology:
    return Topology("pinned", point)


def tethered(point: ExtValue, anchor: ExtValue) -> Topology:
    return Topology("tethered", point, anchor)


def parse_topology(text: str, g: GroupType) -> Topology:
    """``A1 | A2 | A3 | pinned(<v>) | tethered(<v>,<v>)``."""
    from .groups import parse_value

    t = text.strip()
    if t in ("A1", "A2", "A3"):
        return Topology(t)
    for name in ("pinned", "tethered"):
        if t.startswith(name + "(") and t.endswith(")"):
            body = t[len(name) + 1:-1]
            args = _split_top(body)
            vals = [parse_value(a, g) for a in args]
            if name == "pinned" and len(vals) == 1:
                return pinned(vals[0])
            if name == "tethered" and len(vals) == 2:
                return tethered(*vals)
    raise ValueError(f"unknown topology {text!r}")


def _split_top(body: str) -> list[str]:
    out, depth, cur = [], 0, ""
    for ch in body:
        if ch == "," and depth == 0:
            out.append(cur)
            cur = ""
            continue
        depth += ch == "("
        depth -= ch == ")"
        cur += ch
    out.append(cur)
    return out


def is_open_in(U: OpenSet, t: Topology, monoid: MonoidSpec | None = None) -> bool:
    """Decide openness of a representable set.

    Every representable set is order-open.  A set containing INF is open in
    the circle topology iff its complement in the carrier is bounded, and in
    the one-point compactification iff that complement is compact.
    """
    if t.kind == "A1":
        return True
    if t.kind in ("A2", "A3"):
        if not U.has_inf:
            return True
        rest = complement(U, monoid)
        if t.kind == "A2":
            return rest.is_bounded()
        return compactness_predicate(rest, U.group)
    if t.kind == "pinned":
        if not member(U, t.point):
            return True
        return U.parts[0].lo is None and U.parts[-1].hi is None
    if t.kind == "tethered":
        return not member(U, t.point) or member(U, t.anchor)
    raise ValueError(f"unknown topology {t}")


def separate_below(gamma: ExtValue, gamma2: ExtValue) -> tuple[OpenSet, OpenSet]:
    """Order-open U, U2 with ``gamma in U < U2 contains gamma2``.

    With some ``alpha`` strictly between them: ``]-inf, alpha[`` and
    ``]alpha, inf]``.  Otherwise ``]-inf, gamma2[`` and ``]gamma, inf]``.
    """
    if not gamma < gamma2:
        raise ValueError(f"separate_below needs gamma < gamma2, got {gamma}, {gamma2}")
    g = gamma.group
    alpha = between(gamma, gamma2)
    if alpha is not None:
        return ray_below(alpha), ray_above(alpha)
    return ray_below(gamma2, g), ray_above(gamma)


def infinity_basis(t: Topology, g: GroupType, bounds) -> OpenSet:
    """The basic neighbourhood of INF for the given parameters.

    A1: ``bounds = x0`` gives ``]x0, inf]``.  A2: ``bounds = (x0, x1)`` gives
    ``{inf} u Gamma minus [x0, x1]``.  A3: ``bounds`` is a compact closed set
    K (a :class:`ClosedSet` or a list of points) and gives the complement of K.
    """
    if t.kind == "A1":
        if not isinstance(bounds, GroupElem):
            raise ValueError("A1 basis needs a single element x0")
        return ray_above(bounds)
    if t.kind == "A2":
        x0, x1 = bounds
        if x1 < x0:
            raise ValueError(f"empty bounding interval [{x0}, {x1}]")
        return OpenSet(g, (Interval(None, x0), Interval(x1, None, True)))
    if t.kind == "A3":
        K = bounds if isinstance(bounds, ClosedSet) else closed_points(g, bounds)
        if not compactness_predicate(K, g):
            raise ValueError(f"{K} is not compact in {g}")
        return open_complement(K, inf=True)
    raise ValueError(f"no infinity basis for {t}")


def open_complement(K: ClosedSet, inf: bool = True) -> OpenSet:
    """The open set ``Gamma minus K`` (plus INF when ``inf``); K sorted and disjoint."""
    g = K.group
    if is_trivial(g):
        if not K.parts:
            return OpenSet(g, (Interval(None, None, inf),))
        return OpenSet(g, (Interval(zero(g), None, True),) if inf else ())
    ks = sorted(K.parts, key=lambda p: (p[0] is not None, p[0].coords if p[0] is not None else ()))
    if not ks:
        return OpenSet(g, (Interval(None, None, inf),))
    parts = [] if ks[0][0] is None else [Interval(None, ks[0][0])]
    parts += [Interval(a[1], b[0]) for a, b in zip(ks, ks[1:])]
    if ks[-1][1] is not None:
        parts.append(Interval(ks[-1][1], None, inf))
    return OpenSet(g, tuple(parts))


# --------------------------------------------------------------------------
# JSON
# --------------------------------------------------------------------------


def openset_to_json(U: OpenSet) -> list:
    return [
        {
            "lower": "-inf" if p.lo is None else value_to_json(p.lo),
            "upper": "+inf" if p.hi is None else value_to_json(p.hi),
            "inf": p.inf,
        }
        for p in U.parts
    ]


def openset_from_json(data: Sequence, g: GroupType) -> OpenSet:
    parts = []
    for item in data:
        lo = None if item["lower"] == "-inf" else value_from_json(item["lower"], g)
        hi = None if item["upper"] == "+inf" else value_from_json(item["upper"], g)
        parts.append(Interval(lo, hi, bool(item.get("inf", False))))
    return OpenSet(g, tuple(parts))
