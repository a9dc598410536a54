"""Matrices over K[d], elementary row operations and the Dieudonne determinant.

The determinant of an invertible matrix has the shape ``det1 * lambda**d``
with ``det1`` in K.  It is computed by bringing the matrix to upper
triangular form with row operations: swaps contribute a sign, scalings by
elements of K contribute their product to ``det1``, ``row_i += h * row_j``
changes nothing, and the triangular factor is read off the diagonal.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from .arith import ONE, ZERO, RatFunc, as_ratfunc, content_and_primitive
from .ore import NEG_INF, Coeff, OreOp, OrderValue, as_oreop, ore_mul, right_divmod


class OreMatrix:
    """Immutable n x n matrix of operators."""

    __slots__ = ("rows",)

    def __init__(self, rows: Iterable[Iterable[Union[OreOp, Coeff]]]):
        self.rows = tuple(tuple(as_oreop(e) for e in row) for row in rows)
        n = len(self.rows)
        if n == 0:
            raise ValueError("matrix must have at least one row")
        if any(len(row) != n for row in self.rows):
            raise ValueError("matrix must be square")

    @classmethod
    def identity(cls, n: int) -> "OreMatrix":
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def diagonal(cls, entries: Sequence[Union[OreOp, Coeff]]) -> "OreMatrix":
        n = len(entries)
        return cls([[entries[i] if i == j else ZERO for j in range(n)] for i in range(n)])

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, index: tuple[int, int]) -> OreOp:
        i, j = index
        return self.rows[i][j]

    def __iter__(self):
        return iter(self.rows)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, OreMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        from .expr import render_operator

        body = ", ".join("[" + ", ".join(render_operator(e) for e in row) + "]" for row in self.rows)
        return f"OreMatrix([{body}])"

    def __matmul__(self, other: "OreMatrix") -> "OreMatrix":
        if self.n != other.n:
            raise ValueError("dimension mismatch")
        n = self.n
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = OreOp()
                for k in range(n):
                    acc = acc + ore_mul(self.rows[i][k], other.rows[k][j])
                row.append(acc)
            out.append(row)
        return OreMatrix(out)

    def is_upper_triangular(self) -> bool:
        return all(self.rows[i][j].is_zero() for i in range(self.n) for j in range(i))

    def orders(self) -> list[list[OrderValue]]:
        return [[e.order for e in row] for row in self.rows]


@dataclass(frozen=True)
class Swap:
    i: int
    j: int


@dataclass(frozen=True)
class Scale:
    """Row ``i`` is multiplied on the left by the nonzero scalar ``c``."""

    i: int
    c: RatFunc


@dataclass(frozen=True)
class AddMul:
    """``row[target] += h * row[source]`` with left multiplication by h."""

    target: int
    source: int
    h: OreOp


RowOp = Union[Swap, Scale, AddMul]


def apply_row_op(m: OreMatrix, op: RowOp) -> OreMatrix:
    rows = [list(r) for r in m.rows]
    if isinstance(op, Swap):
        rows[op.i], rows[op.j] = rows[op.j], rows[op.i]
    elif isinstance(op, Scale):
        c = as_ratfunc(op.c)
        if c.is_zero():
            raise ValueError("row scaling by zero")
        rows[op.i] = [e.scale_left(c) for e in rows[op.i]]
    elif isinstance(op, AddMul):
        if op.target == op.source:
            raise ValueError("addmul needs two distinct rows")
        h = as_oreop(op.h)
        rows[op.target] = [t + ore_mul(h, s) for t, s in zip(rows[op.target], rows[op.source])]
    else:
        raise TypeError(f"not a row operation: {op!r}")
    return OreMatrix(rows)


def replay(m: OreMatrix, transcript: Iterable[RowOp]) -> OreMatrix:
    for op in transcript:
        m = apply_row_op(m, op)
    return m


@dataclass(frozen=True)
class Triangularization:
    """``T == replay(M, transcript)`` and ``det T = sign * scale * det M``."""

    T: OreMatrix
    sign: int
    transcript: tuple
    scale: RatFunc = ONE


def _row_normalizer(row: Sequence[OreOp]) -> RatFunc:
    """Positive scalar making the row's coefficients primitive polynomials."""
    coeffs = [c for e in row for c in e.coeffs if c]
    if not coeffs:
        return ONE
    s, _ = content_and_primitive(coeffs)
    return -s if s.num.lc() < 0 else s


def _divides(a: RatFunc, b: RatFunc) -> bool:
    """Whether b / a is a polynomial, for polynomial a and b."""
    return a.num.divides(b.num)


def triangularize(m: OreMatrix, scaled: bool = True) -> Triangularization:
    """Upper triangular form by row operations.

    In each column the nonzero entry of least order (lowest row on ties)
    reduces the others until a single nonzero entry is left; that entry is
    then swapped onto the diagonal.

    With ``scaled=False`` only swaps and ``row_r += h * row_p`` are used,
    with h the right quotient of the two entries, so ``det T = sign * det M``.
    Over Q(x) the coefficients of that variant swell quickly, so by default
    a reduction step is fraction free instead: row r is first multiplied by
    the leading coefficient of the pivot, and every modified row is divided
    by its content.  These scalings are recorded and multiplied into
    ``scale``.
    """
    n = m.n
    rows = [list(r) for r in m.rows]
    ops: list[RowOp] = []
    sign = 1
    scale = ONE

    def rescale(r: int, c: RatFunc) -> None:
        nonlocal scale
        if c == ONE:
            return
        rows[r] = [e.scale_left(c) for e in rows[r]]
        ops.append(Scale(r, c))
        scale = scale * c

    if scaled:
        for r in range(n):
            rescale(r, _row_normalizer(rows[r]))
    for k in range(n):
        while True:
            live = [r for r in range(k, n) if rows[r][k]]
            if len(live) <= 1:
                break
            p = min(live, key=lambda r: (rows[r][k].order, r))
            for r in live:
                if r == p:
                    continue
                if scaled:
                    piv = rows[p][k]
                    rescale(r, piv.lc())
                    while rows[r][k] and rows[r][k].order >= piv.order:
                        e = rows[r][k]
                        h = OreOp.monomial(-(e.lc() / piv.lc()), e.order - piv.order)
                        rows[r] = [t + ore_mul(h, s) for t, s in zip(rows[r], rows[p])]
                        ops.append(AddMul(r, p, h))
                        nxt = rows[r][k]
                        if nxt and nxt.order >= piv.order and not _divides(piv.lc(), nxt.lc()):
                            rescale(r, piv.lc())
                    rescale(r, _row_normalizer(rows[r]))
                else:
                    q, _ = right_divmod(rows[r][k], rows[p][k])
                    if q.is_zero():
                        continue
                    h = -q
                    rows[r] = [t + ore_mul(h, s) for t, s in zip(rows[r], rows[p])]
                    ops.append(AddMul(r, p, h))
        if live and live[0] != k:
            r = live[0]
            rows[k], rows[r] = rows[r], rows[k]
            ops.append(Swap(k, r))
            sign = -sign
    return Triangularization(OreMatrix(rows), sign, tuple(ops), scale)


@dataclass(frozen=True)
class DieudonneDet:
    """``det1 * lambda**d``; the zero determinant is ``(0, -inf)``."""

    det1: RatFunc
    d: OrderValue

    @property
    def is_zero(self) -> bool:
        return self.det1.is_zero()


def triangular_det(t: OreMatrix, sign: int = 1, scale: RatFunc = ONE) -> DieudonneDet:
    """Product rule on the diagonal, divided by ``sign * scale``."""
    diag = [t[i, i] for i in range(t.n)]
    if any(e.is_zero() for e in diag):
        return DieudonneDet(ZERO, NEG_INF)
    det1 = ONE
    for e in diag:
        det1 = det1 * e.lc()
    if scale != ONE:
        det1 = det1 / scale
    if sign < 0:
        det1 = -det1
    return DieudonneDet(det1, sum(e.order for e in diag))


def dieudonne_det(m: OreMatrix) -> DieudonneDet:
    tri = triangularize(m)
    return triangular_det(tri.T, tri.sign, tri.scale)
