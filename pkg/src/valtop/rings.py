"""Supported rings, exact element arithmetic, parsing and printing.

Elements are plain Python values where possible: ``int`` for Z and
``Fraction`` for Q.  Polynomials over Q in ``x`` (and ``y``) are
:class:`Poly`; fractions over a domain are :class:`Frac`.  All forms are
canonical, so ``==`` and ``hash`` are structural.
"""
from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union


class RingMismatch(ValueError):
    pass


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


# --------------------------------------------------------------------------
# ring specs
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class IntegersRing:
    def __str__(self):
        return "Z"


@dataclass(frozen=True)
class RationalsField:
    def __str__(self):
        return "Q"


@dataclass(frozen=True)
class Poly1:
    """Q[x]."""

    def __str__(self):
        return "Q[x]"


@dataclass(frozen=True)
class Poly2:
    """Q[x,y], read as a local ring at the maximal ideal (x, y)."""

    generators = ("x", "y")

    def __str__(self):
        return "Q[x,y]"


@dataclass(frozen=True)
class FractionsOf:
    base: RingSpec

    def __post_init__(self):
        if isinstance(self.base, FractionsOf):
            raise ValueError("FractionsOf must wrap a base ring")

    def __str__(self):
        return f"Frac({self.base})"


RingSpec = Union[IntegersRing, RationalsField, Poly1, Poly2, FractionsOf]

ZZ = IntegersRing()
QQ = RationalsField()
QX = Poly1()
QXY = Poly2()


def parse_ring(text: str) -> RingSpec:
    t = text.replace(" ", "")
    simple = {"Z": ZZ, "Q": QQ, "Q[x]": QX, "Q[x,y]": QXY}
    if t in simple:
        return simple[t]
    if t.startswith("Frac(") and t.endswith(")"):
        return FractionsOf(parse_ring(t[5:-1]))
    raise ValueError(f"unknown ring {text!r}")


# --------------------------------------------------------------------------
# polynomials
# --------------------------------------------------------------------------

_VARS = ("x", "y")


@dataclass(frozen=True)
class Poly:
    """A polynomial over Q in ``nvars`` variables; ``terms`` maps exponents to coefficients."""

    nvars: int
    terms: tuple = ()

    def __post_init__(self):
        acc: dict[tuple, Fraction] = {}
        for exps, c in self.terms:
            exps = tuple(exps)
            if len(exps) != self.nvars:
                raise ValueError(f"exponent {exps} for {self.nvars} variables")
            acc[exps] = acc.get(exps, Fraction(0)) + Fraction(c)
        items = sorted(((e, c) for e, c in acc.items() if c != 0), key=_term_key)
        object.__setattr__(self, "terms", tuple(items))

    @classmethod
    def const(cls, nvars: int, c) -> Poly:
        return cls(nvars, (((0,) * nvars, Fraction(c)),))

    @classmethod
    def var(cls, nvars: int, i: int) -> Poly:
        exps = tuple(1 if k == i else 0 for k in range(nvars))
        return cls(nvars, ((exps, Fraction(1)),))

    def _lift(self, other) -> Poly:
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise RingMismatch(f"Q in {self.nvars} vs {other.nvars} variables")
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(self.nvars, other)
        raise RingMismatch(f"cannot combine polynomial with {type(other).__name__}")

    def __add__(self, other):
        other = self._lift(other)
        return Poly(self.nvars, self.terms + other.terms)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.nvars, tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __mul__(self, other):
        other = self._lift(other)
        out = []
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                out.append((tuple(a + b for a, b in zip(e1, e2)), c1 * c2))
        return Poly(self.nvars, tuple(out))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = Poly.const(self.nvars, 1)
        for _ in range(n):
            result = result * self
        return result

    def is_zero(self) -> bool:
        return not self.terms

    def constant_value(self) -> Fraction | None:
        """The value if this is a constant polynomial, else None."""
        if not self.terms:
            return Fraction(0)
        if len(self.terms) == 1 and not any(self.terms[0][0]):
            return self.terms[0][1]
        return None

    def coefficients(self) -> dict:
        return dict(self.terms)

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({format_poly(self)!r})"


def _term_key(item):
    exps, _ = item
    return (-sum(exps), tuple(-e for e in exps))


def _format_monomial(exps) -> str:
    bits = []
    for v, e in zip(_VARS, exps):
        if e == 1:
            bits.append(v)
        elif e > 1:
            bits.append(f"{v}^{e}")
    return "*".join(bits)


def format_poly(p: Poly) -> str:
    if not p.terms:
        return "0"
    out = ""
    for i, (exps, c) in enumerate(p.terms):
        mono = _format_monomial(exps)
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if i == 0:
            out = ("-" if sign == "-" else "") + body
        else:
            out += sign + body
    return out


# --------------------------------------------------------------------------
# fractions
# --------------------------------------------------------------------------


def _to_sympy(p: Poly):
    import sympy

    gens = sympy.symbols(_VARS[: p.nvars])
    expr = sum(
        (sympy.Rational(c.numerator, c.denominator) * sympy.prod([g**e for g, e in zip(gens, exps)])
         for exps, c in p.terms),
        sympy.Integer(0),
    )
    return sympy.Poly(expr, *gens, domain="QQ")


def _from_sympy(sp, nvars: int) -> Poly:
    terms = []
    for exps, c in sp.terms():
        terms.append((tuple(exps), Fraction(int(c.numerator), int(c.denominator))))
    return Poly(nvars, tuple(terms))


def _poly_gcd(a: Poly, b: Poly) -> Poly:
    return _from_sympy(_to_sympy(a).gcd(_to_sympy(b)), a.nvars)


def _poly_div_exact(a: Poly, b: Poly) -> Poly:
    q, r = _to_sympy(a).div(_to_sympy(b))
    if not r.is_zero:
        raise ArithmeticError("inexact polynomial division")
    return _from_sympy(q, a.nvars)


@dataclass(frozen=True)
class Frac:
    """``num / den`` over a domain, reduced, with a normalized denominator."""

    base: RingSpec
    num: object
    den: object

    def __post_init__(self):
        num, den = self.num, self.den
        if is_zero(den):
            raise ZeroDivisionError("zero denominator")
        if isinstance(self.base, IntegersRing):
            f = Fraction(num, den)
            num, den = f.numerator, f.denominator
        elif isinstance(self.base, RationalsField):
            num, den = Fraction(num) / Fraction(den), Fraction(1)
        else:
            nv = 1 if isinstance(self.base, Poly1) else 2
            num, den = to_poly(num, nv), to_poly(den, nv)
            if is_zero(num):
                num, den = Poly.const(nv, 0), Poly.const(nv, 1)
            else:
                g = _poly_gcd(num, den)
                num, den = _poly_div_exact(num, g), _poly_div_exact(den, g)
                lead = den.terms[0][1]
                num, den = num * (1 / lead), den * (1 / lead)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __add__(self, other):
        other = _as_frac(other, self.base)
        return Frac(self.base, _mul(self.num, other.den) + _mul(other.num, self.den),
                    _mul(self.den, other.den))

    __radd__ = __add__

    def __neg__(self):
        return Frac(self.base, -self.num, self.den)

    def __sub__(self, other):
        return self + (-_as_frac(other, self.base))

    def __mul__(self, other):
        other = _as_frac(other, self.base)
        return Frac(self.base, _mul(self.num, other.num), _mul(self.den, other.den))

    __rmul__ = __mul__

    def __str__(self):
        return f"({format_elem(self.num)})/({format_elem(self.den)})"


def _mul(a, b):
    return a * b


def _as_frac(x, base: RingSpec) -> Frac:
    if isinstance(x, Frac):
        if x.base != base:
            raise RingMismatch(f"Frac({x.base}) vs Frac({base})")
        return x
    return Frac(base, x, one(base))


# --------------------------------------------------------------------------
# generic element operations
# --------------------------------------------------------------------------

RingElem = Union[int, Fraction, Poly, Frac]


def ring_of(a) -> RingSpec:
    if isinstance(a, bool):
        raise RingMismatch("booleans are not ring elements")
    if isinstance(a, int):
        return ZZ
    if isinstance(a, Fraction):
        return QQ
    if isinstance(a, Poly):
        return QX if a.nvars == 1 else QXY
    if isinstance(a, Frac):
        return FractionsOf(a.base)
    raise RingMismatch(f"not a ring element: {a!r}")


def _check_same(a, b):
    ra, rb = ring_of(a), ring_of(b)
    if ra != rb:
        raise RingMismatch(f"{ra} vs {rb}")


def ring_add(a, b):
    _check_same(a, b)
    return a + b


def ring_mul(a, b):
    _check_same(a, b)
    return a * b


def ring_neg(a):
    return -a


def one(R: RingSpec):
    if isinstance(R, IntegersRing):
        return 1
    if isinstance(R, RationalsField):
        return Fraction(1)
    if isinstance(R, Poly1):
        return Poly.const(1, 1)
    if isinstance(R, Poly2):
        return Poly.const(2, 1)
    return Frac(R.base, one(R.base), one(R.base))


def zero_elem(R: RingSpec):
    if isinstance(R, IntegersRing):
        return 0
    if isinstance(R, RationalsField):
        return Fraction(0)
    if isinstance(R, Poly1):
        return Poly.const(1, 0)
    if isinstance(R, Poly2):
        return Poly.const(2, 0)
    return Frac(R.base, zero_elem(R.base), one(R.base))


def is_zero(a) -> bool:
    if isinstance(a, Poly):
        return a.is_zero()
    if isinstance(a, Frac):
        return is_zero(a.num)
    return a == 0


def to_poly(a, nvars: int = 2) -> Poly:
    """Embed Z, Q, Q[x] and Q[x,y] elements into Q[x,y] (or Q[x])."""
    if isinstance(a, bool):
        raise RingMismatch("booleans are not ring elements")
    if isinstance(a, (int, Fraction)):
        return Poly.const(nvars, a)
    if isinstance(a, Poly):
        if a.nvars == nvars:
            return a
        if a.nvars < nvars:
            return Poly(nvars, tuple((e + (0,) * (nvars - a.nvars), c) for e, c in a.terms))
        if any(e[1:] != (0,) * (a.nvars - nvars) for e, _ in a.terms):
            raise RingMismatch(f"{a} has variables outside Q[x]")
        return Poly(nvars, tuple((e[:nvars], c) for e, c in a.terms))
    raise RingMismatch(f"cannot view {a!r} as a polynomial")


def format_elem(a) -> str:
    if isinstance(a, Poly):
        return format_poly(a)
    if isinstance(a, Frac):
        return str(a)
    return str(a)


# --------------------------------------------------------------------------
# parsing
# --------------------------------------------------------------------------

_TOKENS = re.compile(r"\s*(?:(\d+)|([xy])|(\^|\+|-|\*|/|\(|\)))")


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKENS.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos:].lstrip()[:1]!r}", pos)
        start = m.start(m.lastindex)
        if m.group(1):
            out.append(("num", int(m.group(1)), start))
        elif m.group(2):
            out.append(("var", m.group(2), start))
        else:
            out.append(("op", m.group(3), start))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


class _Parser:
    """Recursive descent over ``+ - * / ^`` producing ``(num, den)`` in Q[x,y]."""

    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def parse(self):
        value = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {val!r}", pos)
        return value

    def expr(self):
        n, d = self.term()
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            n2, d2 = self.term()
            n = n * d2 + n2 * d if op == "+" else n * d2 - n2 * d
            d = d * d2
        return n, d

    def term(self):
        n, d = self.unary()
        while self.peek()[:2] in (("op", "*"), ("op", "/")):
            op, pos = self.take()[1], self.peek()[2]
            n2, d2 = self.unary()
            if op == "*":
                n, d = n * n2, d * d2
            else:
                if n2.is_zero():
                    raise ParseError("division by zero", pos)
                n, d = n * d2, d * n2
        return n, d

    def unary(self):
        if self.peek()[:2] == ("op", "-"):
            self.take()
            n, d = self.unary()
            return -n, d
        if self.peek()[:2] == ("op", "+"):
            self.take()
        return self.power()

    def power(self):
        n, d = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            kind, val, pos = self.take()
            if kind != "num":
                raise ParseError("exponent must be a non-negative integer", pos)
            n, d = n**val, d**val
        return n, d

    def atom(self):
        kind, val, pos = self.take()
        if kind == "num":
            return Poly.const(2, val), Poly.const(2, 1)
        if kind == "var":
            return Poly.var(2, _VARS.index(val)), Poly.const(2, 1)
        if (kind, val) == ("op", "("):
            value = self.expr()
            k2, v2, p2 = self.take()
            if (k2, v2) != ("op", ")"):
                raise ParseError("expected ')'", p2)
            return value
        raise ParseError(f"unexpected {val if val is not None else 'end of input'!r}", pos)


def _reduce_rational(n: Poly, d: Poly) -> tuple[Poly, Poly]:
    if n.is_zero():
        return n, Poly.const(2, 1)
    g = _poly_gcd(n, d)
    return _poly_div_exact(n, g), _poly_div_exact(d, g)


def parse_elem(text: str, R: RingSpec):
    """Parse an element of R; e.g. ``3/2``, ``x^2+2*x``, ``(x^2)/(y)``."""
    n, d = _Parser(text).parse()
    if isinstance(R, FractionsOf):
        if isinstance(R.base, (IntegersRing, RationalsField)):
            value = _constant(n, d, text)
            if isinstance(R.base, IntegersRing):
                return Frac(R.base, value.numerator, value.denominator)
            return Frac(R.base, value, Fraction(1))
        nv = 1 if isinstance(R.base, Poly1) else 2
        return Frac(R.base, to_poly(n, nv), to_poly(d, nv))
    n, d = _reduce_rational(n, d)
    dc = d.constant_value()
    if dc is None:
        raise ParseError(f"{text!r} is not a polynomial; use a Frac(...) ring", 0)
    p = n * (1 / dc)
    if isinstance(R, (IntegersRing, RationalsField)):
        c = p.constant_value()
        if c is None:
            raise ParseError(f"{text!r} is not a constant", 0)
        if isinstance(R, IntegersRing):
            if c.denominator != 1:
                raise ParseError(f"{text!r} is not an integer", 0)
            return int(c)
        return c
    if isinstance(R, Poly1):
        try:
            return to_poly(p, 1)
        except RingMismatch:
            raise ParseError(f"{text!r} uses y outside Q[x]", 0) from None
    return p


def _constant(n: Poly, d: Poly, text: str) -> Fraction:
    nc, dc = n.constant_value(), d.constant_value()
    if nc is None or dc is None:
        raise ParseError(f"{text!r} is not a constant", 0)
    return nc / dc


# --------------------------------------------------------------------------
# random sampling (tests, sample suites)
# --------------------------------------------------------------------------


def random_poly(rng: random.Random, nvars: int, max_terms: int = 4, max_deg: int = 4,
                max_num: int = 24) -> Poly:
    terms = []
    for _ in range(rng.randint(1, max_terms)):
        exps = tuple(rng.randint(0, max_deg) for _ in range(nvars))
        num = rng.randint(-max_num, max_num)
        den = rng.choice([1, 1, 1, 2, 3, 4, 5, 9, 25])
        terms.append((exps, Fraction(num, den)))
    return Poly(nvars, tuple(terms))


def random_elem(R: RingSpec, rng: random.Random, allow_zero: bool = True):
    while True:
        if isinstance(R, IntegersRing):
            a = rng.choice([rng.randint(-60, 60), rng.randint(-4000, 4000),
                            rng.choice([2, 3, 5, 7]) ** rng.randint(0, 6) * rng.choice([1, -1, 3, 5])])
        elif isinstance(R, RationalsField):
            a = Fraction(random_elem(ZZ, rng), rng.choice([1, 2, 3, 4, 5, 6, 9, 10, 25, 49]))
        elif isinstance(R, Poly1):
            a = random_poly(rng, 1)
        elif isinstance(R, Poly2):
            a = random_poly(rng, 2)
        else:
            num = random_elem(R.base, rng)
            den = random_elem(R.base, rng, allow_zero=False)
            a = Frac(R.base, num, den)
        if allow_zero or not is_zero(a):
            return a
