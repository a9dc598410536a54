"""Exact arithmetic over Q, Q[x] and the differential field Q(x).

``Poly`` is a dense univariate polynomial with ``gmpy2.mpq`` coefficients,
``RatFunc`` a reduced quotient of two of them with a monic denominator.
Both are immutable; equality is structural because the representations
are canonical.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence, Union

from flint import fmpz_poly
from gmpy2 import gcd, lcm, mpq

Rational = type(mpq())
Scalar = Union[int, Fraction, Rational]
SCALAR_TYPES = (int, Fraction, Rational)


def _trim(coeffs: Iterable[Scalar]) -> tuple:
    cs = [mpq(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


class Poly:
    """Polynomial in x over Q; ``coeffs[k]`` is the coefficient of x**k."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        self.coeffs = _trim(coeffs)

    @classmethod
    def _raw(cls, coeffs: tuple) -> "Poly":
        p = object.__new__(cls)
        p.coeffs = coeffs
        return p

    @classmethod
    def const(cls, c: Scalar) -> "Poly":
        return cls((c,))

    @classmethod
    def x(cls) -> "Poly":
        return cls((0, 1))

    @classmethod
    def monomial(cls, c: Scalar, k: int) -> "Poly":
        return cls([0] * k + [c])

    @property
    def degree(self) -> Union[int, float]:
        """Degree, with ``-inf`` for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else float("-inf")

    def lc(self) -> Rational:
        return self.coeffs[-1] if self.coeffs else mpq(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, SCALAR_TYPES):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(("Poly", self.coeffs))

    def __repr__(self) -> str:
        return f"Poly({[str(c) for c in self.coeffs]})"

    def __neg__(self) -> "Poly":
        return Poly._raw(tuple(-c for c in self.coeffs))

    def __add__(self, other: "Poly | Scalar") -> "Poly":
        other = _as_poly(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    __radd__ = __add__

    def __sub__(self, other: "Poly | Scalar") -> "Poly":
        return self + (-_as_poly(other))

    def __rsub__(self, other: Scalar) -> "Poly":
        return _as_poly(other) - self

    def __mul__(self, other: "Poly | Scalar") -> "Poly":
        if isinstance(other, SCALAR_TYPES):
            if other == 0:
                return Poly()
            other = mpq(other)
            return Poly._raw(tuple(c * other for c in self.coeffs))
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        out = [mpq(0)] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return Poly._raw(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative exponent")
        result = Poly.const(1)
        for _ in range(k):
            result = result * self
        return result

    def __divmod__(self, other: "Poly") -> tuple["Poly", "Poly"]:
        other = _as_poly(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        db = len(other.coeffs) - 1
        inv = 1 / other.coeffs[-1]
        if len(r) - 1 < db:
            return Poly(), self
        q = [mpq(0)] * (len(r) - db)
        for k in range(len(r) - 1 - db, -1, -1):
            c = r[k + db] * inv
            q[k] = c
            if c:
                for j, bj in enumerate(other.coeffs):
                    r[k + j] -= c * bj
        return Poly(q), Poly(r[:db])

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def divides(self, other: "Poly") -> bool:
        """True iff ``self`` divides ``other`` in Q[x]."""
        if self.is_zero():
            return other.is_zero()
        return (other % self).is_zero()

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        lc = self.coeffs[-1]
        if lc == 1:
            return self
        return Poly._raw(tuple(c / lc for c in self.coeffs))

    def derivative(self) -> "Poly":
        return Poly(k * c for k, c in enumerate(self.coeffs) if k)

    def __call__(self, value: Scalar) -> Rational:
        acc = mpq(0)
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def integer_content(self) -> Rational:
        """Positive rational ``q`` with ``self / q`` integral and primitive."""
        if self.is_zero():
            return mpq(0)
        num = reduce(gcd, (c.numerator for c in self.coeffs))
        den = reduce(lcm, (c.denominator for c in self.coeffs))
        return mpq(abs(num), den)


def _as_poly(value: "Poly | Scalar") -> Poly:
    if isinstance(value, Poly):
        return value
    if isinstance(value, SCALAR_TYPES):
        return Poly.const(value)
    raise TypeError(f"cannot coerce {type(value).__name__} to Poly")


def _primitive_ints(p: Poly) -> list:
    """Integer coefficients of ``p / content(p)``."""
    den = reduce(lcm, (c.denominator for c in p.coeffs))
    ints = [c.numerator * (den // c.denominator) for c in p.coeffs]
    g = reduce(gcd, ints)
    return [v // g for v in ints]


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd, computed over Z by FLINT; ``gcd(0, 0)`` is 0."""
    if a.is_zero() or b.is_zero():
        return (b if a.is_zero() else a).monic()
    if a.is_constant() or b.is_constant():
        return Poly.const(1)
    A = fmpz_poly([int(v) for v in _primitive_ints(a)])
    B = fmpz_poly([int(v) for v in _primitive_ints(b)])
    g = A.gcd(B)
    if g.degree() == 0:
        return Poly.const(1)
    return Poly([int(v) for v in g.coeffs()]).monic()


def poly_content(polys: Iterable[Poly]) -> Poly:
    """Monic gcd of several polynomials, stopping as soon as it reaches 1."""
    ordered = sorted(polys, key=lambda p: len(p.coeffs))
    if not ordered:
        return Poly()
    g = ordered[0].monic()
    for p in ordered[1:]:
        if g.is_constant():
            break
        g = poly_gcd(g, p)
    return g


def poly_arith(a: Poly, b: Poly, op: str):
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "divmod":
        return divmod(a, b)
    if op == "gcd":
        return poly_gcd(a, b)
    raise ValueError(f"unknown polynomial operation {op!r}")


class RatFunc:
    """Element of Q(x) stored as ``num/den`` with gcd 1 and ``den`` monic."""

    __slots__ = ("num", "den")

    def __init__(self, num: "Poly | Scalar" = 0, den: "Poly | Scalar" = 1):
        num, den = _as_poly(num), _as_poly(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            self.num, self.den = Poly(), Poly.const(1)
            return
        if not den.is_constant():
            g = poly_gcd(num, den)
            if not g.is_constant():
                num, den = num // g, den // g
        lc = den.coeffs[-1]
        if lc != 1:
            num = num * (1 / lc)
            den = den * (1 / lc)
        self.num, self.den = num, den

    @classmethod
    def _raw(cls, num: Poly, den: Poly) -> "RatFunc":
        f = object.__new__(cls)
        f.num, f.den = num, den
        return f

    @classmethod
    def x(cls) -> "RatFunc":
        return cls._raw(Poly.x(), Poly.const(1))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def in_ring(self) -> bool:
        """Membership in Q[x]: the reduced denominator is 1."""
        return self.den.is_constant()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (*SCALAR_TYPES, Poly)):
            other = RatFunc(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash(("RatFunc", self.num.coeffs, self.den.coeffs))

    def __repr__(self) -> str:
        return f"RatFunc({self.num!r}, {self.den!r})"

    def __neg__(self) -> "RatFunc":
        return RatFunc._raw(-self.num, self.den)

    def __add__(self, other: "RatFunc | Poly | Scalar") -> "RatFunc":
        other = as_ratfunc(other)
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        if self.den.is_constant():
            return RatFunc._raw(self.num * other.den + other.num, other.den)
        if other.den.is_constant():
            return RatFunc._raw(self.num + other.num * self.den, self.den)
        g = poly_gcd(self.den, other.den)
        if g.is_constant():
            # coprime denominators: the sum is already reduced
            return RatFunc._raw(self.num * other.den + other.num * self.den,
                                self.den * other.den)
        d1, d2 = self.den // g, other.den // g
        return RatFunc(self.num * d2 + other.num * d1, d1 * other.den)

    __radd__ = __add__

    def __sub__(self, other: "RatFunc | Poly | Scalar") -> "RatFunc":
        return self + (-as_ratfunc(other))

    def __rsub__(self, other: "Poly | Scalar") -> "RatFunc":
        return as_ratfunc(other) - self

    def __mul__(self, other: "RatFunc | Poly | Scalar") -> "RatFunc":
        if isinstance(other, SCALAR_TYPES):
            if other == 0:
                return RatFunc()
            return RatFunc._raw(self.num * other, self.den)
        other = as_ratfunc(other)
        if self.is_zero() or other.is_zero():
            return RatFunc()
        if self.den.is_constant() and other.den.is_constant():
            return RatFunc._raw(self.num * other.num, self.den)
        return _cross_reduced(self.num, self.den, other.num, other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other: "RatFunc | Poly | Scalar") -> "RatFunc":
        other = as_ratfunc(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return _cross_reduced(self.num, self.den, other.den, other.num)

    def __rtruediv__(self, other: "Poly | Scalar") -> "RatFunc":
        return as_ratfunc(other) / self

    def __pow__(self, k: int) -> "RatFunc":
        if k < 0:
            return self.inverse() ** (-k)
        return RatFunc._raw(self.num ** k, self.den ** k)

    def to_poly(self) -> Poly:
        if not self.in_ring():
            raise ArithmeticError(f"{self} is not a polynomial")
        return self.num


def _cross_reduced(n1: Poly, d1: Poly, n2: Poly, d2: Poly) -> RatFunc:
    """``(n1/d1) * (n2/d2)`` for coprime pairs, cancelling across only."""
    g1, g2 = poly_gcd(n1, d2), poly_gcd(n2, d1)
    if not g1.is_constant():
        n1, d2 = n1 // g1, d2 // g1
    if not g2.is_constant():
        n2, d1 = n2 // g2, d1 // g2
    num, den = n1 * n2, d1 * d2
    lc = den.lc()
    if lc != 1:
        num, den = num * (1 / lc), den * (1 / lc)
    return RatFunc._raw(num, den)


def as_ratfunc(value: "RatFunc | Poly | Scalar") -> RatFunc:
    if isinstance(value, RatFunc):
        return value
    if isinstance(value, Poly):
        return RatFunc._raw(value, Poly.const(1))
    if isinstance(value, SCALAR_TYPES):
        return RatFunc._raw(Poly.const(value), Poly.const(1))
    raise TypeError(f"cannot coerce {type(value).__name__} to RatFunc")


def ratfunc_arith(a: RatFunc, b: RatFunc, op: str) -> RatFunc:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown rational function operation {op!r}")


def derive(f: RatFunc) -> RatFunc:
    """d/dx by the quotient rule."""
    if f.den.is_constant():
        return RatFunc._raw(f.num.derivative(), f.den)
    return RatFunc(f.num.derivative() * f.den - f.num * f.den.derivative(),
                   f.den * f.den)


ZERO = RatFunc()
ONE = RatFunc(1)


def content_and_primitive(v: Sequence[RatFunc]) -> tuple[RatFunc, list[Poly]]:
    """Scale ``v`` into Q[x] with trivial content.

    Returns ``(s, w)`` with ``w[i] == s * v[i]``: denominators are cleared,
    the common polynomial factor is removed, and the rational coefficients
    of ``w`` are integers with gcd 1.  The sign of ``s`` is chosen so the
    first nonzero entry of ``w`` has a positive leading coefficient.
    """
    v = [as_ratfunc(f) for f in v]
    nonzero = [f for f in v if f]
    if not nonzero:
        raise ValueError("content of the zero vector is undefined")
    den = Poly.const(1)
    for f in nonzero:
        if not f.den.is_constant():
            den = den * (f.den // poly_gcd(den, f.den))
    nums = [f.num * (den // f.den) if f else Poly() for f in v]
    g = poly_content(p for p in nums if p)
    if not g.is_constant():
        nums = [p // g for p in nums]
    num_gcd = abs(reduce(gcd, (c.numerator for p in nums for c in p.coeffs)))
    den_lcm = reduce(lcm, (c.denominator for p in nums for c in p.coeffs))
    scale = mpq(den_lcm, num_gcd)
    if next(p for p in nums if p).lc() < 0:
        scale = -scale
    w = [p * scale for p in nums]
    return RatFunc(Poly.const(scale) * den, g), w
