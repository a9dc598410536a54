"""Commutative linear algebra over Q(x): determinants and left kernels."""

from __future__ import annotations

from itertools import permutations
from typing import Sequence

from .arith import ONE, ZERO, RatFunc, as_ratfunc

Grid = Sequence[Sequence[RatFunc]]


def bareiss_det(grid: Grid) -> RatFunc:
    """Determinant by fraction-free (Bareiss) elimination with row pivoting.

    Every division is exact; for polynomial input all intermediates stay
    polynomial.
    """
    a = [[as_ratfunc(e) for e in row] for row in grid]
    n = len(a)
    if n == 0:
        return ONE
    sign = 1
    prev = ONE
    for k in range(n - 1):
        if a[k][k].is_zero():
            swap = next((r for r in range(k + 1, n) if a[r][k]), None)
            if swap is None:
                return ZERO
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) / prev
            a[i][k] = ZERO
        prev = pivot
    det = a[n - 1][n - 1]
    return -det if sign < 0 else det


def cofactor_det(grid: Grid) -> RatFunc:
    """Laplace expansion along the first row; exponential, for checking."""
    n = len(grid)
    if n == 0:
        return ONE
    if n == 1:
        return as_ratfunc(grid[0][0])
    total = ZERO
    for j in range(n):
        entry = as_ratfunc(grid[0][j])
        if entry.is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in (list(r) for r in grid[1:])]
        term = entry * cofactor_det(minor)
        total = total - term if j % 2 else total + term
    return total


def leibniz_det(grid: Grid) -> RatFunc:
    """Sum over permutations; used only as a slow reference."""
    n = len(grid)
    total = ZERO
    for perm in permutations(range(n)):
        term = ONE
        for i, j in enumerate(perm):
            term = term * grid[i][j]
            if term.is_zero():
                break
        if term.is_zero():
            continue
        inversions = sum(1 for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b])
        total = total - term if inversions % 2 else total + term
    return total


def rref(grid: Grid) -> tuple[list[list[RatFunc]], list[int]]:
    """Reduced row echelon form over Q(x) and the pivot columns."""
    a = [[as_ratfunc(e) for e in row] for row in grid]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = a[r][c].inverse()
        a[r] = [e * inv for e in a[r]]
        for i in range(rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [e - f * pe for e, pe in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, pivots


def left_kernel_vector(grid: Grid) -> list[RatFunc] | None:
    """A nonzero ``c`` with ``sum_i c[i] * row_i == 0``, or None.

    The first free variable of the transposed system is set to 1 and all
    others to 0, which makes the choice deterministic.
    """
    n = len(grid)
    transposed = [[grid[i][j] for i in range(n)] for j in range(len(grid[0]))] if n else []
    reduced, pivots = rref(transposed)
    free = [c for c in range(n) if c not in pivots]
    if not free:
        return None
    f = free[0]
    c = [ZERO] * n
    c[f] = ONE
    for row, p in zip(reduced, pivots):
        c[p] = -row[f]
    return c
