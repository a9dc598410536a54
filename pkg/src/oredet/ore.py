"""Differential operators sum_k f_k(x) d^k with f_k in Q(x).

Multiplication follows the commutation rule ``d*f = f*d + f'``.  Orders are
plain ints, with ``NEG_INF`` (``float('-inf')``) for the zero operator so
that ``ord(a*b) == ord(a) + ord(b)`` and ``max`` work without special cases.
"""

from __future__ import annotations

from typing import Iterable, Union

from .arith import ONE, SCALAR_TYPES, ZERO, Poly, RatFunc, Scalar, as_ratfunc, derive

NEG_INF = float("-inf")
OrderValue = Union[int, float]

Coeff = Union[RatFunc, Poly, Scalar]


def _trim(coeffs: Iterable[Coeff]) -> tuple:
    cs = [as_ratfunc(c) for c in coeffs]
    while cs and cs[-1].is_zero():
        cs.pop()
    return tuple(cs)


class OreOp:
    """Element of K[d]; ``coeffs[k]`` multiplies ``d**k`` from the left."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Coeff] = ()):
        self.coeffs = _trim(coeffs)

    @classmethod
    def scalar(cls, c: Coeff) -> "OreOp":
        return cls((c,))

    @classmethod
    def d(cls, k: int = 1) -> "OreOp":
        return cls([ZERO] * k + [ONE])

    @classmethod
    def monomial(cls, c: Coeff, k: int) -> "OreOp":
        return cls([ZERO] * k + [c])

    @property
    def order(self) -> OrderValue:
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def lc(self) -> RatFunc:
        return self.coeffs[-1] if self.coeffs else ZERO

    def coeff(self, k: int) -> RatFunc:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return ZERO

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (*SCALAR_TYPES, Poly, RatFunc)):
            other = OreOp.scalar(other)
        if not isinstance(other, OreOp):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(("OreOp", self.coeffs))

    def __repr__(self) -> str:
        from .expr import render_operator

        return f"OreOp({render_operator(self)!r})"

    def __neg__(self) -> "OreOp":
        return OreOp(-c for c in self.coeffs)

    def __add__(self, other: "OreOp | Coeff") -> "OreOp":
        other = as_oreop(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return OreOp(out)

    __radd__ = __add__

    def __sub__(self, other: "OreOp | Coeff") -> "OreOp":
        return self + (-as_oreop(other))

    def __rsub__(self, other: Coeff) -> "OreOp":
        return as_oreop(other) - self

    def scale_left(self, f: Coeff) -> "OreOp":
        """``f * self`` for a scalar f; no derivatives appear."""
        f = as_ratfunc(f)
        if f.is_zero():
            return OreOp()
        return OreOp(f * c for c in self.coeffs)

    def d_times(self) -> "OreOp":
        """``d * self``: each f_k d^k becomes f_k d^(k+1) + f_k' d^k."""
        out = [ZERO] * (len(self.coeffs) + 1)
        for k, c in enumerate(self.coeffs):
            out[k + 1] = out[k + 1] + c
            out[k] = out[k] + derive(c)
        return OreOp(out)

    def times_d(self, k: int = 1) -> "OreOp":
        """``self * d**k``: a plain shift of the coefficient list."""
        if self.is_zero():
            return self
        return OreOp([ZERO] * k + list(self.coeffs))

    def __mul__(self, other: "OreOp | Coeff") -> "OreOp":
        return ore_mul(self, as_oreop(other))

    def __rmul__(self, other: Coeff) -> "OreOp":
        return ore_mul(as_oreop(other), self)

    def __pow__(self, k: int) -> "OreOp":
        result = OreOp.scalar(ONE)
        for _ in range(k):
            result = result * self
        return result


def as_oreop(value: "OreOp | Coeff") -> OreOp:
    if isinstance(value, OreOp):
        return value
    return OreOp.scalar(value)


def ore_mul(a: OreOp, b: OreOp) -> OreOp:
    """Product ``a * b`` in K[d] by iterated commutation of d past b."""
    if a.is_zero() or b.is_zero():
        return OreOp()
    acc = OreOp()
    power = b  # d**k * b
    for k, c in enumerate(a.coeffs):
        if k:
            power = power.d_times()
        if c:
            acc = acc + power.scale_left(c)
    return acc


def ord(a: OreOp) -> OrderValue:  # noqa: A001
    return a.order


def coeff_at(a: OreOp, k: int) -> RatFunc:
    return a.coeff(k)


def right_divmod(a: OreOp, b: OreOp) -> tuple[OreOp, OreOp]:
    """Return ``(q, r)`` with ``a == q*b + r`` and ``ord(r) < ord(b)``."""
    if b.is_zero():
        raise ZeroDivisionError("right division by the zero operator")
    q_coeffs: dict[int, RatFunc] = {}
    r = a
    lcb = b.lc()
    while not r.is_zero() and r.order >= b.order:
        shift = r.order - b.order
        t = r.lc() / lcb
        q_coeffs[shift] = q_coeffs.get(shift, ZERO) + t
        r = r - ore_mul(OreOp.monomial(t, shift), b)
    top = max(q_coeffs, default=-1)
    q = OreOp(q_coeffs.get(k, ZERO) for k in range(top + 1))
    return q, r


def in_subring(a: OreOp) -> bool:
    """True iff every coefficient lies in Q[x]."""
    return all(c.in_ring() for c in a.coeffs)

