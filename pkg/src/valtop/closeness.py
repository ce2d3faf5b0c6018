"""Separating opens for non-valuations, and the P1/P2 and T1 constructions.

Given a table f that breaks one of the valuation axioms, we build a basic
open of the product topology (a :class:`CylinderOpen`) that contains f and
whose interval conditions force every member to break the same axiom.  A
:class:`Certificate` packages that open with the intermediate sets so it can
be re-checked without re-running the construction.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import floor, prod
from typing import Callable, Iterable, Sequence

from .groups import (
    INF, ExtValue, Full, GroupElem, GroupMismatch, GroupType, MonoidSpec, NonNegative, Q, Z,
    as_monoid, format_value, is_trivial, leaves, parse_monoid, smallest_positive,
    split_positive, unit, value_from_json, value_to_json, zero, parse_value,
)
from .opensets import (
    Interval, OpenSet, Topology, has_open_points, intersect, interval, is_open_in, is_subset,
    member, minkowski_hull, openset_from_json, openset_to_json, precedes, ray_above,
    ray_below, separate_below, singleton,
)
from .rings import (
    QQ, QX, QXY, ZZ, RingSpec, format_elem, is_zero, one, parse_elem, parse_ring, random_elem,
    zero_elem,
)
from .valuations import (
    DomainError, FnTable, Valuation, ViolationReport, check_axioms, coerce, evaluate,
    parse_valuation, probe_set, recheck, table_of,
)

DEFAULT_WINDOW = 16


class NotAViolation(ValueError):
    """The reported violation does not hold for the table."""


class SeparationError(ValueError):
    """The topology separates the two points, so no counterexample exists."""


# --------------------------------------------------------------------------
# cylinders and certificates
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class CylinderOpen:
    """``{g : g(a) in O_a for each constrained a}``."""

    group: GroupType
    constraints: tuple  # ((elem, OpenSet), ...)

    def as_dict(self) -> dict:
        return dict(self.constraints)

    def __getitem__(self, a) -> OpenSet:
        return self.as_dict()[a]

    def contains(self, g: Callable[[object], ExtValue | None] | FnTable) -> bool:
        look = g.value if isinstance(g, FnTable) else g
        for a, O in self.constraints:
            v = look(a)
            if v is None or not member(O, v):
                return False
        return True

    def __str__(self):
        return "{" + ", ".join(f"{format_elem(a)} -> {O}" for a, O in self.constraints) + "}"


@dataclass(frozen=True)
class Certificate:
    violation: ViolationReport
    cylinder: CylinderOpen
    side_data: tuple  # ((role, OpenSet), ...)
    ring: RingSpec
    monoid: MonoidSpec
    window: int = DEFAULT_WINDOW

    def side(self, role: str) -> OpenSet:
        return dict(self.side_data)[role]


@dataclass
class Verdict:
    contains_f: bool
    conditions_hold: bool
    probes_excluded: bool
    probes_checked: int = 0
    probes_skipped: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.contains_f and self.conditions_hold and self.probes_excluded


def _clip(U: OpenSet, monoid: MonoidSpec) -> OpenSet:
    """Drop the negative part in discrete non-negative monoids.

    In dense groups the open ``[0, a[`` of the monoid is not a representable
    open of Gamma, so the ray is kept; only values in the monoid are ever
    tested against it.
    """
    if not isinstance(monoid, NonNegative):
        return U
    s = smallest_positive(U.group)
    if s is None:
        return U
    return intersect(U, ray_above(-s))


def _punctured(g: GroupType, x: ExtValue) -> OpenSet:
    """Gamma_inf minus {x} as two rays (or Gamma when x is INF)."""
    if x is INF:
        return OpenSet.finite(g)
    return OpenSet(g, (Interval(None, x), Interval(x, None, True)))


def synthesize_separating_open(f: FnTable, v: ViolationReport) -> Certificate:
    """Build a certificate that ``f`` lies in an open set free of valuations."""
    if not recheck(f, v):
        raise NotAViolation(f"{v.describe()} does not hold for this table")
    g, monoid = f.group, f.monoid
    if v.axiom == "V3":
        (a,) = v.witnesses
        if is_zero(a):
            O = OpenSet.finite(g)
        elif isinstance(monoid, NonNegative):
            O = ray_above(zero(g))
        else:
            O = _punctured(g, zero(g))
        return Certificate(v, CylinderOpen(g, ((a, O),)), (("O", O),), f.ring, monoid)

    a, b = v.witnesses
    fa, fb = f[a], f[b]
    if v.axiom == "V1":
        ab = a * b
        x, y = fa + fb, f[ab]
        U, W = _separate_points(x, y, g)
        V, V2 = check_P1_order(fa, fb, U)
        if a == b:
            V = V2 = intersect(V, V2)
        cons = [(a, _clip(V, monoid))]
        if b != a:
            cons.append((b, _clip(V2, monoid)))
        cons.append((ab, _clip(W, monoid)))
        side = (("U", U), ("W", W), ("V", V), ("V'", V2))
        return Certificate(v, CylinderOpen(g, tuple(cons)), side, f.ring, monoid)

    s = a + b
    fs = f[s]
    U, W = separate_below(fs, fa)
    U2, W2 = separate_below(fs, fb)
    Wa = intersect(W, W2) if a == b else W
    cons = [(a, _clip(Wa, monoid))]
    if b != a:
        cons.append((b, _clip(W2, monoid)))
    cons.append((s, _clip(intersect(U, U2), monoid)))
    side = (("U", U), ("U'", U2), ("W", W), ("W'", W2))
    return Certificate(v, CylinderOpen(g, tuple(cons)), side, f.ring, monoid)


def _separate_points(x: ExtValue, y: ExtValue, g: GroupType) -> tuple[OpenSet, OpenSet]:
    """Disjoint opens around two distinct values."""
    if x is not INF and y is not INF and has_open_points(g) and not is_trivial(g):
        return singleton(x), singleton(y)
    lo, hi = (x, y) if x < y else (y, x)
    A, B = separate_below(lo, hi)
    return (A, B) if x < y else (B, A)


def verify_certificate(c: Certificate, f: FnTable, probes: Sequence[Valuation]) -> Verdict:
    """Re-check a certificate: f is inside, the conditions force the axiom to
    fail, and no probe valuation is inside."""
    failures = []
    cyl = c.cylinder
    inside = cyl.contains(f)
    if not inside:
        failures.append("table is not in the cylinder")
    cond = _conditions(c, failures)
    checked = skipped = 0
    excluded = True
    for nu in probes:
        try:
            vals = {a: coerce(evaluate(nu, a), cyl.group) for a, _ in cyl.constraints}
        except (GroupMismatch, DomainError):
            skipped += 1
            continue
        checked += 1
        if cyl.contains(vals.get):
            excluded = False
            failures.append(f"probe {nu} lies in the cylinder")
    return Verdict(inside, cond, excluded, checked, skipped, failures)


def _conditions(c: Certificate, failures: list) -> bool:
    v = c.violation
    C = c.cylinder.as_dict()
    g = c.cylinder.group
    try:
        if v.axiom == "V3":
            (a,) = v.witnesses
            O = C[a]
            if is_zero(a):
                ok = not member(O, INF)
            elif a == one(c.ring):
                ok = not member(O, zero(g))
            else:
                ok = False
            if not ok:
                failures.append("V3 constraint admits an axiom-respecting value")
            return ok
        a, b = v.witnesses
        if v.axiom == "V1":
            U, W = c.side("U"), c.side("W")
            ok = True
            if not intersect(U, W).is_empty():
                failures.append("U and W meet")
                ok = False
            if not is_subset(minkowski_hull(C[a], C[b]), U):
                failures.append("hull of the factor constraints is not inside U")
                ok = False
            if not is_subset(C[a * b], W):
                failures.append("product constraint is not inside W")
                ok = False
            return ok
        if v.axiom == "V2":
            U, U2, W, W2 = (c.side(r) for r in ("U", "U'", "W", "W'"))
            ok = precedes(U, W) and precedes(U2, W2)
            if not ok:
                failures.append("side sets are not ordered")
            s = C[a + b]
            if not (is_subset(C[a], W) and is_subset(C[b], W2) and is_subset(s, intersect(U, U2))):
                failures.append("constraints are not inside the side sets")
                ok = False
            if not (precedes(s, C[a]) and precedes(s, C[b])):
                failures.append("sum constraint is not below both summand constraints")
                ok = False
            return ok
    except KeyError as exc:
        failures.append(f"missing constraint or side set {exc}")
        return False
    failures.append(f"unknown axiom {v.axiom}")
    return False


# --------------------------------------------------------------------------
# brute-force exclusion
# --------------------------------------------------------------------------


def _window_points(O: OpenSet, window: int) -> list[ExtValue]:
    """Integer points of O near its finite endpoints, plus INF when inside."""
    g = O.group
    if g != Z:
        raise ValueError("exhaustive enumeration runs over Z only")
    ends = [p.lo.coords[0] for p in O.parts if p.lo is not None]
    ends += [p.hi.coords[0] for p in O.parts if p.hi is not None]
    centre = ends[0] if ends else 0
    lo = min(ends, default=centre) - window
    hi = max(ends, default=centre) + window
    pts = [GroupElem(g, (k,)) for k in range(lo, hi + 1)]
    out = [p for p in pts if member(O, p)]
    if member(O, INF):
        out.append(INF)
    return out


def exclusion_oracle(c: Certificate, window: int = 8) -> tuple[int, list]:
    """Enumerate member tables of the cylinder over Z and test the axiom.

    Unbounded constraints are truncated to ``window`` steps past their
    endpoints.  Returns the number of tables tried and those that satisfy
    the certified axiom (there should be none).
    """
    cons = c.cylinder.constraints
    keys = [a for a, _ in cons]
    grids = [_window_points(O, window) for _, O in cons]
    v = c.violation
    bad = []
    n = 0
    for combo in itertools.product(*grids):
        n += 1
        val = dict(zip(keys, combo))
        if _satisfies(v, val, c.ring, c.cylinder.group):
            bad.append(val)
    return n, bad


def _satisfies(v: ViolationReport, val: dict, ring, g) -> bool:
    if v.axiom == "V3":
        (a,) = v.witnesses
        return val[a] is INF if is_zero(a) else val[a] == zero(g)
    a, b = v.witnesses
    if v.axiom == "V1":
        return val[a] + val[b] == val[a * b]
    return not val[a + b] < min(val[a], val[b])


# --------------------------------------------------------------------------
# random corrupted tables
# --------------------------------------------------------------------------

_RINGS = (ZZ, QQ, QX, QXY)


def corrupted_table(rng: random.Random) -> tuple[FnTable, Valuation]:
    """A valuation table with one entry replaced by a wrong value.

    The domain holds random base elements with their squares, pairwise
    products and sums, plus 0 and 1, so the corruption is always detectable.
    """
    R = rng.choice(_RINGS)
    g = rng.choice((Z, Q))
    nu = rng.choice(probe_set(g))
    base = []
    while len(base) < 3:
        e = random_elem(R, rng, allow_zero=False)
        if e != one(R) and e not in base:
            base.append(e)
    elems = [zero_elem(R), one(R)] + base
    for x, y in itertools.combinations_with_replacement(base, 2):
        elems += [x * y, x + y]
    elems = list(dict.fromkeys(elems))
    t = table_of(nu, elems, R, Full(g))
    if rng.random() < 0.25:
        # push a sum below both summands
        x, y = rng.sample(base, 2)
        low = min(t.entries[x], t.entries[y])
        if low is not INF:
            t.entries[x + y] = low - unit(g).scale(rng.randint(1, 5))
            return t, nu
    target = rng.choice([zero_elem(R), one(R)] + base)
    old = t.entries[target]
    while True:
        if rng.random() < 0.15:
            new = INF
        else:
            num = rng.randint(-20, 20)
            new = GroupElem(g, (Fraction(num, rng.choice((1, 2, 3))) if g == Q else num,))
        if new != old:
            break
    t.entries[target] = new
    return t, nu


# --------------------------------------------------------------------------
# P1 and P2
# --------------------------------------------------------------------------


def check_P1_order(gamma: ExtValue, gamma2: ExtValue, U: OpenSet) -> tuple[OpenSet, OpenSet]:
    """Order-opens V, V' around gamma, gamma2 with ``V + V'`` inside U."""
    g = U.group
    x = gamma + gamma2
    if not member(U, x):
        raise ValueError(f"{format_value(x)} is not in {U}")
    part = next(p for p in U.parts if p.contains(x))
    if gamma is INF or gamma2 is INF:
        return _p1_infinite(gamma, gamma2, part, g)
    if has_open_points(g):
        return singleton(gamma), singleton(gamma2)
    u = unit(g)
    alpha = x - part.lo if part.lo is not None else u
    beta = part.hi - x if part.hi is not None else u
    a1, a2 = split_positive(alpha)
    b1, b2 = split_positive(beta)
    return interval(g, gamma - a1, gamma + b1), interval(g, gamma2 - a2, gamma2 + b2)


def _p1_infinite(gamma, gamma2, part: Interval, g: GroupType):
    if part.lo is None:
        everything = OpenSet.everything(g)
        return everything, everything
    alpha = part.lo
    if gamma is INF and gamma2 is INF:
        c = max(alpha, zero(g))
        return ray_above(c), ray_above(c)
    flip = gamma is not INF
    fin = gamma if flip else gamma2
    beta = unit(g) or zero(g)
    V = ray_above(alpha - fin + beta)
    V2 = ray_above(fin - beta)
    return (V2, V) if flip else (V, V2)


@dataclass(frozen=True)
class Witness:
    U: OpenSet
    U2: OpenSet


@dataclass(frozen=True)
class Refutation:
    """No separating pair exists; :meth:`counter` shows why for a given pair."""

    topology: Topology
    gamma: ExtValue
    gamma2: ExtValue

    def counter(self, U: OpenSet, U2: OpenSet) -> tuple[ExtValue, ExtValue]:
        """``(u, u2)`` with u in U, u2 in U2 and ``u >= u2``.

        U and U2 must be open in the topology and contain gamma and gamma2.
        """
        t, gm, gm2 = self.topology, self.gamma, self.gamma2
        for S, p in ((U, gm), (U2, gm2)):
            if not (member(S, p) and is_open_in(S, t)):
                raise ValueError(f"{S} is not an open neighbourhood of {format_value(p)} in {t}")
        g = U.group
        s = unit(g)
        if t.kind in ("A2", "A3"):
            first = U2.parts[0]
            if first.lo is not None:
                raise ValueError(f"{U2} is bounded below")
            low = gm if first.hi is None else min(gm, first.hi)
            return gm, low - s
        pin = t.point
        if gm == pin:
            top = U.parts[-1].lo
            if member(U2, pin):
                return pin, pin
            if gm2 is INF:
                m = max([x for x in (top, U2.parts[-1].lo, gm) if x is not None]) + s
                return m, m
            m = max([x for x in (top, gm2) if x is not None]) + s
            return m, gm2
        low = U2.parts[0].hi
        m = (gm if low is None else min(gm, low)) - s
        return gm, m


def check_P2(t: Topology, gamma: ExtValue, gamma2: ExtValue) -> Witness | Refutation:
    """Separate ``gamma < gamma2`` by opens ``U < U'`` in t, or refute."""
    if not gamma < gamma2:
        raise ValueError("check_P2 needs gamma < gamma2")
    g = gamma.group
    if t.kind == "A1":
        return Witness(*separate_below(gamma, gamma2))
    if t.kind in ("A2", "A3"):
        if gamma2 is INF:
            return Refutation(t, gamma, gamma2)
        U, U2 = separate_below(gamma, gamma2)
        return Witness(U, intersect(U2, OpenSet.finite(g)))
    if t.kind == "pinned":
        if t.point in (gamma, gamma2):
            return Refutation(t, gamma, gamma2)
        U, U2 = separate_below(gamma, gamma2)
        hole = _punctured(g, t.point)
        return Witness(intersect(U, hole), intersect(U2, hole))
    raise ValueError(f"P2 is not decided for {t}")


@dataclass(frozen=True)
class P1Refutation:
    U: OpenSet
    V: OpenSet
    V2: OpenSet
    gamma: GroupElem
    hull: OpenSet


@dataclass(frozen=True)
class P1Failure:
    """``U = Gamma_inf minus {0}`` is an INF-neighbourhood with no matching V, V'."""

    topology: Topology
    group: GroupType
    U: OpenSet

    def witness(self, V: OpenSet, V2: OpenSet) -> P1Refutation:
        """For INF-neighbourhoods V, V', an element gamma in V with -gamma in V'."""
        for S in (V, V2):
            if S.group != self.group:
                raise GroupMismatch(f"{S.group} vs {self.group}")
            if not (S.has_inf and is_open_in(S, self.topology)):
                raise ValueError(f"{S} is not an open neighbourhood of inf in {self.topology}")
        bound = Fraction(0)
        for S in (V, V2):
            for p in S.parts:
                for e in (p.lo, p.hi):
                    if e is not None:
                        bound = max(bound, abs(Fraction(e.coords[0])))
        n = len(leaves(self.group))
        gm = GroupElem(self.group, (floor(bound) + 1,) + (0,) * (n - 1))
        hull = minkowski_hull(V, V2)
        if not (member(V, gm) and member(V2, -gm) and member(hull, zero(self.group))):
            raise AssertionError("witness construction failed")
        return P1Refutation(self.U, V, V2, gm, hull)


def check_P1_failure(t: Topology, g: GroupType) -> P1Failure:
    if t.kind not in ("A2", "A3"):
        raise ValueError(f"P1 holds for {t}; refutations exist only for A2 and A3")
    if is_trivial(g):
        raise ValueError("the trivial group has no nonzero elements")
    U = _punctured(g, zero(g))
    assert is_open_in(U, t)
    return P1Failure(t, g, U)


# --------------------------------------------------------------------------
# non-T1 counterexample
# --------------------------------------------------------------------------


def _window_endpoints(values: Iterable[ExtValue], g: GroupType, window: int) -> list[GroupElem]:
    fin = [v for v in values if v is not INF]
    if not fin:
        fin = [zero(g)]
    u = unit(g)
    if u is None:
        return [zero(g)]
    steps = [Fraction(k) for k in range(-window, window + 1)]
    if smallest_positive(g) is None:
        steps += [k + Fraction(1, 2) for k in range(-window, window)]
    pts = {v + u.scale(k) for v in fin for k in steps}
    return sorted(pts)


def basic_opens(g: GroupType, endpoints: Sequence[GroupElem]) -> Iterable[OpenSet]:
    """Intervals, rays and two-ray unions with the given endpoints."""
    yield OpenSet.everything(g)
    yield OpenSet.finite(g)
    for e in endpoints:
        yield ray_below(e)
        yield ray_above(e)
        yield ray_above(e, inf=False)
    for i, e in enumerate(endpoints):
        for e2 in endpoints[i + 1:]:
            yield interval(g, e, e2)
            for inf in (True, False):
                yield OpenSet(g, (Interval(None, e), Interval(e2, None, inf)))


@dataclass
class T1Report:
    table: FnTable
    target: object
    gamma: ExtValue
    gamma2: ExtValue
    branch: str
    violation: ViolationReport
    coordinates: list
    containing_f: list
    containing_both: list
    window: int

    @property
    def cylinders_checked(self) -> int:
        return prod(self.containing_f)

    @property
    def exceptions(self) -> int:
        return prod(self.containing_f) - prod(self.containing_both)


def t1_counterexample(nu: Valuation, a0, gamma2: ExtValue, t: Topology,
                      window: int = DEFAULT_WINDOW) -> tuple[FnTable, T1Report]:
    """Alter ``nu`` at one point so the result is inseparable from ``nu``.

    With ``gamma = nu(a0)`` finite and nonzero the value at a0 becomes
    gamma2, breaking multiplicativity at (a0, a0).  When gamma is 0 or INF
    the change is made at 1 or at 0.  Every window-bounded basic cylinder
    around the altered table is checked to contain ``nu`` as well; a cylinder
    counts once per choice of basic open on each altered or checked
    coordinate, so the totals are products of per-coordinate counts.
    """
    from .rings import ring_of

    R = ring_of(a0)
    g = nu.group
    gamma = evaluate(nu, a0)
    if gamma2 is not INF and gamma2.group != g:
        gamma2 = coerce(gamma2, g)
    if gamma == gamma2:
        raise ValueError("gamma and gamma2 must differ")
    if gamma is INF:
        target, branch = zero_elem(R), "zero"
    elif gamma == zero(g):
        target, branch = one(R), "one"
    else:
        target, branch = a0, "generic"
    entries = {target: gamma2}
    if branch == "generic":
        entries[a0 * a0] = evaluate(nu, a0 * a0)
    f = FnTable(R, Full(g), entries, backing=nu)
    v = check_axioms(f)
    if v is None:
        raise AssertionError("altered table still satisfies the axioms")
    coords = list(entries)
    fvals = [f[a] for a in coords]
    nvals = [evaluate(nu, a) for a in coords]
    ends = _window_endpoints(fvals + nvals, g, window)
    opens = [O for O in basic_opens(g, ends) if is_open_in(O, t)]
    n_f, n_both = [], []
    for a, fv, nv in zip(coords, fvals, nvals):
        cf = cb = 0
        for O in opens:
            if member(O, fv):
                cf += 1
                if member(O, nv):
                    cb += 1
                elif a == target:
                    raise SeparationError(
                        f"{O} is open in {t}, contains {format_value(gamma2)} but not {format_value(gamma)}")
        n_f.append(cf)
        n_both.append(cb)
    return f, T1Report(f, target, gamma, gamma2, branch, v, coords, n_f, n_both, window)


# --------------------------------------------------------------------------
# JSON
# --------------------------------------------------------------------------


def _value_in(data, g: GroupType) -> ExtValue:
    if isinstance(data, int) and not isinstance(data, bool):
        data = [data]
    elif isinstance(data, str) and data != "inf":
        return parse_value(data, g)
    return value_from_json(data, g)


def table_to_json(t: FnTable) -> dict:
    return {
        "ring": str(t.ring),
        "monoid": str(t.monoid),
        "entries": [{"elem": format_elem(a), "value": value_to_json(v)} for a, v in t.entries.items()],
        "backing": None if t.backing is None else str(t.backing),
    }


def table_from_json(data: dict) -> FnTable:
    R = parse_ring(data["ring"])
    monoid = as_monoid(parse_monoid(data["monoid"]))
    g = monoid.group
    entries = {}
    for item in data["entries"]:
        a = parse_elem(str(item["elem"]), R)
        if a in entries:
            raise ValueError(f"duplicate entry {format_elem(a)}")
        entries[a] = _value_in(item["value"], g)
    backing = data.get("backing")
    return FnTable(R, monoid, entries, parse_valuation(backing) if backing else None)


def violation_to_json(v: ViolationReport) -> dict:
    return {
        "axiom": v.axiom,
        "witnesses": [format_elem(a) for a in v.witnesses],
        "values": [value_to_json(x) for x in v.values],
    }


def certificate_to_json(c: Certificate) -> dict:
    return {
        "ring": str(c.ring),
        "monoid": str(c.monoid),
        "violation": violation_to_json(c.violation),
        "constraints": [{"elem": format_elem(a), "open": openset_to_json(O)}
                        for a, O in c.cylinder.constraints],
        "side_data": {role: openset_to_json(O) for role, O in c.side_data},
        "window": c.window,
    }


def certificate_from_json(data: dict) -> Certificate:
    R = parse_ring(data["ring"])
    monoid = as_monoid(parse_monoid(data["monoid"]))
    g = monoid.group
    vd = data["violation"]
    v = ViolationReport(
        vd["axiom"],
        tuple(parse_elem(w, R) for w in vd["witnesses"]),
        tuple(_value_in(x, g) for x in vd["values"]),
    )
    cons = tuple((parse_elem(c["elem"], R), openset_from_json(c["open"], g)) for c in data["constraints"])
    side = tuple((role, openset_from_json(O, g)) for role, O in data["side_data"].items())
    return Certificate(v, CylinderOpen(g, cons), side, R, monoid, int(data.get("window", DEFAULT_WINDOW)))
