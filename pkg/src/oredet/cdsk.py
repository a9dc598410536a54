"""Certified computation of det1 for degeneracy-degree-one matrices over R[d].

Pipeline (R = Q[x]):

1. take an optimal majorant ``(N_j, h_i)`` and pad every column on the right
   and every row on the left by powers of d until the majorant is uniform,
   ``(N, ..., N, h, ..., h)``;
2. split the padded matrix as ``A d^(N-h) + B d^(N-h-1) + ...``;
3. find ``c`` over R with ``sum c_i A_i = 0`` (A is singular);
4. replace row 1 by ``c_1 row_1 + sum_{i>1} c_i row_i``; the result is
   non-degenerate for the majorant ``(N..N, h+1, h..h)`` and its
   characteristic matrix has rows ``(sum c_i B_i, A_2, ..., A_n)``;
5. expand that determinant along the first row into summands that are each
   divisible by ``c_1`` in R, so ``D = det / c_1`` is a polynomial.

Every intermediate is cross-checked against the Dieudonne determinant.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .arith import Poly, RatFunc, content_and_primitive
from .dieudonne import (AddMul, DieudonneDet, OreMatrix, Scale, Swap,
                        apply_row_op, dieudonne_det)
from .errors import (ConsistencyError, DegeneracyError, DomainError,
                     NoKernelError, NotMajorantError, ZeroDeterminantError)
from .linalg import bareiss_det, left_kernel_vector
from .majorant import (Majorant, characteristic_matrix, degeneracy_degree,
                       is_majorant, optimal_majorant, total_order)
from .ore import OreOp, in_subring

Grid = tuple  # tuple of tuples of RatFunc


@dataclass(frozen=True)
class UniformForm:
    Mp: OreMatrix
    N: int
    h: int
    col_pads: tuple
    row_pads: tuple

    @property
    def width(self) -> int:
        return self.N - self.h

    @property
    def majorant(self) -> Majorant:
        n = self.Mp.n
        return Majorant([self.N] * n, [self.h] * n)


def pad_columns_and_rows(m: OreMatrix, col_pads, row_pads) -> OreMatrix:
    """Right-multiply column j by d**col_pads[j], left-multiply row i by d**row_pads[i]."""
    rows = []
    for i, row in enumerate(m.rows):
        out = []
        for j, e in enumerate(row):
            e = e.times_d(col_pads[j])
            for _ in range(row_pads[i]):
                e = e.d_times()
            out.append(e)
        rows.append(out)
    return OreMatrix(rows)


def pad_to_uniform(m: OreMatrix, maj: Majorant) -> UniformForm:
    if not is_majorant(m, maj) or maj.weight != total_order(m):
        raise NotMajorantError("padding needs an optimal majorant")
    N, h = max(maj.N), min(maj.h)
    col_pads = tuple(N - v for v in maj.N)
    row_pads = tuple(v - h for v in maj.h)
    return UniformForm(pad_columns_and_rows(m, col_pads, row_pads), N, h, col_pads, row_pads)


def rows_attain_width(u: UniformForm) -> bool:
    return all(any(e.order == u.width for e in row) for row in u.Mp.rows)


@dataclass(frozen=True)
class LeadingSplit:
    A: Grid
    B: Grid


def leading_split(u: UniformForm) -> LeadingSplit:
    w = u.width
    A = tuple(tuple(e.coeff(w) for e in row) for row in u.Mp.rows)
    B = tuple(tuple(e.coeff(w - 1) for e in row) for row in u.Mp.rows)
    return LeadingSplit(A, B)


@dataclass(frozen=True)
class RelationVector:
    c: tuple  # of Poly
    pivot: int


def kernel_relation(A) -> RelationVector:
    """Primitive relation ``sum c_i A_i = 0`` among the rows of A over R.

    Entries are polynomials with trivial content and the first nonzero
    entry (the pivot) has a positive leading coefficient.
    """
    c = left_kernel_vector(A)
    if c is None:
        raise NoKernelError("matrix is nonsingular; its rows are independent")
    _, polys = content_and_primitive(c)
    pivot = next(i for i, p in enumerate(polys) if p)
    return RelationVector(tuple(polys), pivot)


def relation_holds(A, rel: RelationVector) -> bool:
    n = len(A)
    return all(sum((RatFunc(rel.c[i]) * A[i][j] for i in range(n)), RatFunc()).is_zero()
               for j in range(len(A[0])))


@dataclass(frozen=True)
class Dd1Certificate:
    M: OreMatrix
    det: DieudonneDet
    majorant: Majorant
    uniform: UniformForm
    split: LeadingSplit
    relation: RelationVector
    swapped: bool
    Mpp: OreMatrix
    Mpp_majorant: Majorant
    Mpp_char: Grid
    summands: tuple  # det(M''_i) for i = 1..n, each a Poly
    summand_quotients: tuple  # det(M''_i) / c_1
    char_det: Poly  # det(M''_char) = c_1 * D_swapped
    D: Poly  # det1(M)

    @property
    def c1(self) -> Poly:
        return self.row_relation[0]

    @property
    def row_relation(self) -> tuple:
        """Relation vector in the (possibly swapped) row order used for M''."""
        c = list(self.relation.c)
        if self.swapped:
            p = self.relation.pivot
            c[0], c[p] = c[p], c[0]
        return tuple(c)

    @property
    def sign(self) -> int:
        return -1 if self.swapped else 1


def _first_row_char(split: LeadingSplit, c) -> tuple:
    n = len(split.A)
    top = tuple(sum((RatFunc(c[i]) * split.B[i][j] for i in range(n)), RatFunc()) for j in range(n))
    return (top,) + tuple(split.A[1:])


def _swap_rows(grid, p):
    rows = list(grid)
    rows[0], rows[p] = rows[p], rows[0]
    return tuple(rows)


def _as_poly(f: RatFunc, what: str) -> Poly:
    if not f.in_ring():
        raise ConsistencyError(f"{what} is not in R: {f}")
    return f.num


def build_mpp(Mp: OreMatrix, c) -> OreMatrix:
    """Row 1 becomes ``c_1 row_1 + sum_{i>1} c_i row_i``."""
    mpp = apply_row_op(Mp, Scale(0, RatFunc(c[0])))
    for i in range(1, Mp.n):
        if c[i]:
            mpp = apply_row_op(mpp, AddMul(0, i, OreOp.scalar(c[i])))
    return mpp


def cdsk_reduce(m: OreMatrix) -> Dd1Certificate:
    if not all(in_subring(e) for row in m.rows for e in row):
        raise DomainError("entries must have polynomial coefficients")
    det = dieudonne_det(m)
    if det.is_zero:
        raise ZeroDeterminantError("determinant is zero")
    dd = degeneracy_degree(m, det)
    if dd != 1:
        raise DegeneracyError(f"degeneracy degree is {dd}, the reduction needs 1")
    n = m.n

    maj = optimal_majorant(m)
    uniform = pad_to_uniform(m, maj)
    if not rows_attain_width(uniform):
        raise ConsistencyError("a padded row does not attain the uniform order")
    split = leading_split(uniform)
    if not all(f.in_ring() for grid in (split.A, split.B) for row in grid for f in row):
        raise ConsistencyError("leading coefficients left R")
    if not bareiss_det(split.A).is_zero():
        raise ConsistencyError("leading matrix of a degenerate matrix is nonsingular")
    rel = kernel_relation(split.A)

    swapped = rel.pivot != 0
    Mp, A, B, c = uniform.Mp, split.A, split.B, list(rel.c)
    if swapped:
        Mp = apply_row_op(Mp, Swap(0, rel.pivot))
        A, B = _swap_rows(A, rel.pivot), _swap_rows(B, rel.pivot)
        c[0], c[rel.pivot] = c[rel.pivot], c[0]
    sw_split = LeadingSplit(A, B)

    mpp = build_mpp(Mp, c)
    w = uniform.width
    mpp_maj = Majorant([uniform.N] * n, [uniform.h + 1] + [uniform.h] * (n - 1))
    if not is_majorant(mpp, mpp_maj):
        raise ConsistencyError("(N..N, h+1, h..h) is not a majorant of M''")
    mpp_char = characteristic_matrix(mpp, mpp_maj).C
    if mpp_char != _first_row_char(sw_split, c):
        raise ConsistencyError("characteristic matrix of M'' differs from (sum c_i B_i, A_2..A_n)")

    c1 = c[0]
    summands, quotients = [], []
    for i in range(n):
        top = tuple(RatFunc(c[i]) * f for f in B[i])
        s = _as_poly(bareiss_det((top,) + tuple(A[1:])), f"det(M''_{i + 1})")
        q, r = divmod(s, c1)
        if r:
            raise ConsistencyError(f"det(M''_{i + 1}) is not divisible by c_1")
        summands.append(s)
        quotients.append(q)
    total = sum(summands, Poly())
    if RatFunc(total) != bareiss_det(mpp_char):
        raise ConsistencyError("first-row expansion does not sum to det(M''_char)")
    D_swapped, r = divmod(total, c1)
    if r:
        raise ConsistencyError("det(M''_char) is not a multiple of c_1")
    D = -D_swapped if swapped else D_swapped

    if RatFunc(D) != det.det1:
        raise ConsistencyError(f"certificate D = {D} but det1 = {det.det1}")
    mpp_det = dieudonne_det(mpp)
    expected = RatFunc(c1) * RatFunc(D_swapped)
    if mpp_det.det1 != expected or mpp_det.d != n * w - 1:
        raise ConsistencyError("det(M'') is not c_1 * D * lambda**(n(N-h)-1)")

    return Dd1Certificate(
        M=m, det=det, majorant=maj, uniform=uniform, split=split, relation=rel,
        swapped=swapped, Mpp=mpp, Mpp_majorant=mpp_maj, Mpp_char=mpp_char,
        summands=tuple(summands), summand_quotients=tuple(quotients),
        char_det=total, D=D,
    )


def verify_certificate(cert: Dd1Certificate, check_det: bool = True) -> list[str]:
    """Replay the certificate's steps; return a list of failed checks.

    The relation, pads and swaps are taken from the certificate; everything
    derived from them is recomputed and compared with the stored values.
    """
    problems = []

    def expect(cond: bool, message: str) -> None:
        if not cond:
            problems.append(message)

    m, n = cert.M, cert.M.n
    maj = cert.majorant
    expect(is_majorant(m, maj) and maj.weight == total_order(m), "majorant is not optimal")
    u = cert.uniform
    expect(u.N == max(maj.N) and u.h == min(maj.h), "uniform bounds do not match majorant")
    expect(u.col_pads == tuple(u.N - v for v in maj.N), "column pads do not match majorant")
    expect(u.row_pads == tuple(v - u.h for v in maj.h), "row pads do not match majorant")
    Mp = pad_columns_and_rows(m, u.col_pads, u.row_pads)
    expect(Mp == u.Mp, "padding does not reproduce M'")
    split = leading_split(UniformForm(Mp, u.N, u.h, u.col_pads, u.row_pads))
    expect(split == cert.split, "leading split does not match")
    rel = cert.relation
    expect(all(isinstance(p, Poly) for p in rel.c), "relation entries are not polynomials")
    expect(any(rel.c) and rel.c[rel.pivot] and not any(rel.c[:rel.pivot]), "bad relation pivot")
    expect(relation_holds(split.A, rel), "sum c_i A_i != 0")
    expect(cert.swapped == (rel.pivot != 0), "swap flag inconsistent with pivot")

    c = list(cert.row_relation)
    if cert.swapped:
        Mp = apply_row_op(Mp, Swap(0, rel.pivot))
    mpp = build_mpp(Mp, c)
    expect(mpp == cert.Mpp, "row operations do not reproduce M''")
    expect(cert.Mpp_majorant == Majorant([u.N] * n, [u.h + 1] + [u.h] * (n - 1)),
           "M'' majorant is not (N..N, h+1, h..h)")
    expect(is_majorant(mpp, cert.Mpp_majorant), "(N..N, h+1, h..h) is not a majorant of M''")
    expect(characteristic_matrix(mpp, cert.Mpp_majorant).C == cert.Mpp_char,
           "M''_char does not match")

    c1 = c[0]
    A = _swap_rows(split.A, rel.pivot) if cert.swapped else split.A
    B = _swap_rows(split.B, rel.pivot) if cert.swapped else split.B
    for i in range(n):
        top = tuple(RatFunc(c[i]) * f for f in B[i])
        s = bareiss_det((top,) + tuple(A[1:]))
        expect(s == RatFunc(cert.summands[i]), f"summand {i + 1} does not match")
        expect(cert.summand_quotients[i] * c1 == cert.summands[i],
               f"summand {i + 1} is not c_1 times its stored quotient")
    expect(sum(cert.summands, Poly()) == cert.char_det, "summands do not add up")
    expect(RatFunc(cert.char_det) == bareiss_det(cert.Mpp_char), "det(M''_char) mismatch")
    D_swapped = -cert.D if cert.swapped else cert.D
    expect(c1 * D_swapped == cert.char_det, "det(M''_char) != c_1 * D")
    if check_det:
        expect(dieudonne_det(m).det1 == RatFunc(cert.D), "D differs from det1(M)")
    return problems


def verify_membership(m: OreMatrix, det: Optional[DieudonneDet] = None) -> bool:
    """True iff det1(M) is a polynomial; intended for dd in {0, 1}."""
    det = det if det is not None else dieudonne_det(m)
    if det.is_zero:
        raise ZeroDeterminantError("determinant is zero")
    return det.det1.in_ring()

