"""Ordered abelian groups, their elements, and the extension by infinity.

A group is a :class:`GroupType`: the integers, the rationals,
the trivial group, or a lexicographic product of two groups.  Because the
lexicographic order is associative, every element is stored as a flat tuple
of leaf coordinates and compared as a tuple.

Values of valuations live in ``Gamma_inf = Gamma + {INF}``; the finite part
is a :class:`GroupElem` and the adjoined maximum is the singleton :data:`INF`.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union


class GroupMismatch(ValueError):
    """Two values over different groups were combined."""


class GroupTypeError(ValueError):
    """A group string could not be parsed."""


# --------------------------------------------------------------------------
# group specs
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Integers:
    def __str__(self) -> str:
        return "Z"


@dataclass(frozen=True)
class Rationals:
    def __str__(self) -> str:
        return "Q"


@dataclass(frozen=True)
class Trivial:
    """The group {0}; only 0 and INF exist over it."""

    def __str__(self) -> str:
        return "0"


@dataclass(frozen=True)
class Lex:
    left: GroupType
    right: GroupType

    def __str__(self) -> str:
        return f"lex({self.left},{self.right})"


GroupType = Union[Integers, Rationals, Trivial, Lex]

Z = Integers()
Q = Rationals()
TRIVIAL = Trivial()


def lex(left: GroupType, right: GroupType) -> Lex:
    return Lex(left, right)


def leaves(g: GroupType) -> tuple[str, ...]:
    """Leaf kinds in lexicographic priority order ('Z' or 'Q')."""
    if isinstance(g, Integers):
        return ("Z",)
    if isinstance(g, Rationals):
        return ("Q",)
    if isinstance(g, Trivial):
        return ()
    if isinstance(g, Lex):
        return leaves(g.left) + leaves(g.right)
    raise TypeError(f"not a group: {g!r}")


def is_trivial(g: GroupType) -> bool:
    return not leaves(g)


def is_complete(g: GroupType) -> bool:
    """Whether the underlying ordered set is complete.

    Z and {0} are complete; Q is not.  A lexicographic product of two
    nontrivial groups never is: the set {(0, b)} is bounded above by (1, 0)
    but has no least upper bound.
    """
    if isinstance(g, Lex):
        if is_trivial(g.left):
            return is_complete(g.right)
        if is_trivial(g.right):
            return is_complete(g.left)
        return False
    return not isinstance(g, Rationals)


# --------------------------------------------------------------------------
# elements
# --------------------------------------------------------------------------


def _coerce_coord(kind: str, value) -> int | Fraction:
    if kind == "Z":
        f = Fraction(value)
        if f.denominator != 1:
            raise ValueError(f"integer coordinate expected, got {value}")
        return int(f)
    return Fraction(value)


@dataclass(frozen=True, eq=False)
class GroupElem:
    """A finite element of an ordered abelian group."""

    group: GroupType
    coords: tuple

    def __post_init__(self):
        kinds = leaves(self.group)
        if len(kinds) != len(self.coords):
            raise ValueError(
                f"{self.group} expects {len(kinds)} coordinates, got {len(self.coords)}")
        object.__setattr__(
            self, "coords", tuple(_coerce_coord(k, c) for k, c in zip(kinds, self.coords)))

    # equality and hashing ignore nothing: group and coordinates both count
    def __eq__(self, other):
        if isinstance(other, GroupElem):
            return self.group == other.group and self.coords == other.coords
        return NotImplemented

    def __hash__(self):
        return hash((self.group, self.coords))

    def _check(self, other: GroupElem):
        if self.group != other.group:
            raise GroupMismatch(f"{self.group} vs {other.group}")

    def __add__(self, other):
        if other is INF:
            return INF
        if not isinstance(other, GroupElem):
            return NotImplemented
        self._check(other)
        return GroupElem(self.group, tuple(a + b for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self) -> GroupElem:
        return GroupElem(self.group, tuple(-a for a in self.coords))

    def __sub__(self, other: GroupElem) -> GroupElem:
        return self + (-other)

    def scale(self, n) -> GroupElem:
        """Multiply by an integer (or by a rational when every leaf is Q)."""
        return GroupElem(self.group, tuple(a * n for a in self.coords))

    def __lt__(self, other):
        if other is INF:
            return True
        if not isinstance(other, GroupElem):
            return NotImplemented
        self._check(other)
        return self.coords < other.coords

    def __le__(self, other):
        return self == other or self < other

    def __gt__(self, other):
        if other is INF:
            return False
        if not isinstance(other, GroupElem):
            return NotImplemented
        self._check(other)
        return self.coords > other.coords

    def __ge__(self, other):
        return self == other or self > other

    def __repr__(self):
        return f"GroupElem({format_value(self)} in {self.group})"

    def __str__(self):
        return format_value(self)


class Infinity:
    """The absorbing maximum adjoined to every group."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __add__(self, other):
        if other is INF or isinstance(other, GroupElem):
            return INF
        return NotImplemented

    __radd__ = __add__

    def __lt__(self, other):
        if other is INF or isinstance(other, GroupElem):
            return False
        return NotImplemented

    def __le__(self, other):
        if other is INF:
            return True
        if isinstance(other, GroupElem):
            return False
        return NotImplemented

    def __gt__(self, other):
        if other is INF:
            return False
        if isinstance(other, GroupElem):
            return True
        return NotImplemented

    def __ge__(self, other):
        if other is INF or isinstance(other, GroupElem):
            return True
        return NotImplemented

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("valtop.INF")

    def __repr__(self):
        return "INF"

    __str__ = lambda self: "inf"

    def __reduce__(self):
        return (Infinity, ())


INF = Infinity()

ExtValue = Union[GroupElem, Infinity]


def elem(g: GroupType, *coords) -> GroupElem:
    return GroupElem(g, tuple(coords))


def zero(g: GroupType) -> GroupElem:
    return GroupElem(g, tuple(0 for _ in leaves(g)))


def unit(g: GroupType) -> GroupElem | None:
    """A fixed positive element: 1 in the last coordinate (None for {0})."""
    n = len(leaves(g))
    if n == 0:
        return None
    return GroupElem(g, tuple(0 for _ in range(n - 1)) + (1,))


# --------------------------------------------------------------------------
# order and arithmetic
# --------------------------------------------------------------------------


def compare(a: ExtValue, b: ExtValue) -> int:
    """Three-way comparison: -1, 0 or 1."""
    if isinstance(a, GroupElem) and isinstance(b, GroupElem):
        a._check(b)
    if a == b:
        return 0
    return -1 if a < b else 1


def add(a: ExtValue, b: ExtValue) -> ExtValue:
    return a + b


def negate(a: GroupElem) -> GroupElem:
    return -a


def smallest_positive(g: GroupType) -> GroupElem | None:
    """The least element > 0, which exists iff the last leaf is Z."""
    kinds = leaves(g)
    if not kinds or kinds[-1] != "Z":
        return None
    return unit(g)


def between(a: ExtValue, b: ExtValue) -> ExtValue | None:
    """Some element strictly between ``a`` and ``b``, or None if there is none.

    The choice is deterministic.  For a finite ``b``, let ``i`` be the first
    coordinate where they differ: a Q coordinate takes the midpoint there, a
    Z coordinate with a gap of at least 2 takes ``a_i + 1``, and a gap of 1
    moves to the last coordinate (``a + unit``) when later coordinates exist.
    For ``b = INF`` the answer is ``a + unit``.
    """
    if not a < b:
        raise ValueError(f"between needs a < b, got {a} and {b}")
    if a is INF:  # unreachable given a < b
        return None
    g = a.group
    u = unit(g)
    if b is INF:
        return None if u is None else a + u
    kinds = leaves(g)
    i = next(k for k in range(len(kinds)) if a.coords[k] != b.coords[k])
    ai, bi = a.coords[i], b.coords[i]
    tail = tuple(0 for _ in kinds[i + 1:])
    if kinds[i] == "Q":
        return GroupElem(g, a.coords[:i] + ((ai + bi) / 2,) + tail)
    if bi - ai >= 2:
        return GroupElem(g, a.coords[:i] + (ai + 1,) + tail)
    if i + 1 < len(kinds):
        return a + u
    return None


def split_positive(alpha: GroupElem) -> tuple[GroupElem, GroupElem] | None:
    """Write ``alpha > 0`` as a sum of two positive elements, if possible."""
    g = alpha.group
    if not alpha > zero(g):
        raise ValueError(f"split_positive needs a positive element, got {alpha}")
    first = between(zero(g), alpha)
    if first is None:
        return None
    return first, alpha - first


# --------------------------------------------------------------------------
# monoids
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Full:
    group: GroupType

    def __str__(self):
        return str(self.group)


@dataclass(frozen=True)
class NonNegative:
    """The submonoid of elements >= 0, plus INF."""

    group: GroupType

    def __str__(self):
        return f"nonneg({self.group})"


MonoidSpec = Union[Full, NonNegative]


def in_monoid(x: ExtValue, m: MonoidSpec) -> bool:
    if x is INF:
        return True
    if x.group != m.group:
        return False
    return isinstance(m, Full) or x >= zero(m.group)


def as_monoid(m: MonoidSpec | GroupType) -> MonoidSpec:
    return m if isinstance(m, (Full, NonNegative)) else Full(m)


# --------------------------------------------------------------------------
# text and JSON forms
# --------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(lex|nonneg|Z|Q|0|\(|\)|,)")


def _parse(text: str):
    pos = 0

    def take():
        nonlocal pos
        m = _TOKEN.match(text, pos)
        if not m:
            raise GroupTypeError(f"unexpected input at position {pos}: {text[pos:]!r}")
        pos = m.end()
        return m.group(1)

    def expect(tok):
        got = take()
        if got != tok:
            raise GroupTypeError(f"expected {tok!r} before position {pos}, got {got!r}")

    def node():
        tok = take()
        if tok == "Z":
            return Z
        if tok == "Q":
            return Q
        if tok == "0":
            return TRIVIAL
        if tok in ("lex", "nonneg"):
            expect("(")
            left = node()
            if tok == "nonneg":
                expect(")")
                if isinstance(left, (Full, NonNegative)):
                    raise GroupTypeError("nonneg() must wrap a group")
                return NonNegative(left)
            expect(",")
            right = node()
            expect(")")
            if isinstance(left, NonNegative) or isinstance(right, NonNegative):
                raise GroupTypeError("nonneg() may only appear outermost")
            return Lex(left, right)
        raise GroupTypeError(f"unexpected {tok!r} before position {pos}")

    result = node()
    if text[pos:].strip():
        raise GroupTypeError(f"trailing input at position {pos}: {text[pos:]!r}")
    return result


def parse_group(text: str) -> GroupType:
    """Parse ``Z | Q | 0 | lex(<group>,<group>)``."""
    result = _parse(text)
    if isinstance(result, NonNegative):
        raise GroupTypeError("expected a group, got a monoid")
    return result


def parse_monoid(text: str) -> MonoidSpec:
    """Parse a group string, optionally wrapped in ``nonneg(...)``."""
    return as_monoid(_parse(text))


def _coord_json(c):
    if isinstance(c, int):
        return c
    c = Fraction(c)
    return c.numerator if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def value_to_json(x: ExtValue):
    """``"inf"`` or a list of integers and ``"p/q"`` strings."""
    if x is INF:
        return "inf"
    return [_coord_json(c) for c in x.coords]


def value_from_json(data, g: GroupType) -> ExtValue:
    if data == "inf":
        return INF
    if not isinstance(data, list):
        data = [data]
    return GroupElem(g, tuple(Fraction(c) if isinstance(c, str) else c for c in data))


def format_value(x: ExtValue) -> str:
    if x is INF:
        return "inf"
    parts = [str(c) for c in x.coords]
    if len(parts) == 1:
        return parts[0]
    return "(" + ",".join(parts) + ")"


def parse_value(text: str, g: GroupType) -> ExtValue:
    """Parse ``inf``, ``3``, ``-1/2`` or ``(1,-2)``."""
    t = text.strip()
    if t in ("inf", "oo", "∞"):
        return INF
    if t.startswith("(") and t.endswith(")"):
        t = t[1:-1]
    items = [s.strip() for s in t.split(",")] if t else []
    try:
        return GroupElem(g, tuple(Fraction(s) for s in items))
    except (ValueError, ZeroDivisionError) as exc:
        raise GroupTypeError(f"bad value {text!r} for {g}: {exc}") from None
