"""Total order, majorants, characteristic matrices and degeneracy degree.

The total order is a maximum-weight assignment on the matrix of entry
orders, zero entries being forbidden edges.  The dual potentials of that
assignment form an optimal majorant: with row potentials ``u`` and column
potentials ``v`` satisfying ``u_i + v_j >= ord(A_ij)`` and summing to the
optimum, ``h = -u`` and ``N = v``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations
from typing import Optional, Sequence

from .arith import RatFunc
from .dieudonne import DieudonneDet, OreMatrix, dieudonne_det
from .errors import NotMajorantError, ZeroDeterminantError
from .linalg import bareiss_det
from .ore import NEG_INF, OrderValue

Weights = Sequence[Sequence[Optional[int]]]


@dataclass(frozen=True)
class Majorant:
    N: tuple
    h: tuple

    def __post_init__(self):
        object.__setattr__(self, "N", tuple(int(v) for v in self.N))
        object.__setattr__(self, "h", tuple(int(v) for v in self.h))
        if len(self.N) != len(self.h):
            raise ValueError("N and h must have the same length")

    @property
    def n(self) -> int:
        return len(self.N)

    @property
    def weight(self) -> int:
        return sum(self.N) - sum(self.h)

    def bound(self, i: int, j: int) -> int:
        return self.N[j] - self.h[i]

    def shifted(self, k: int) -> "Majorant":
        return Majorant([v + k for v in self.N], [v + k for v in self.h])

    def normalized(self) -> "Majorant":
        return self.shifted(-min(self.h))


@dataclass(frozen=True)
class Assignment:
    perm: tuple  # perm[i] = column matched to row i
    value: int
    row_potential: tuple
    col_potential: tuple


def max_weight_assignment(weights: Weights) -> Optional[Assignment]:
    """Hungarian method for a maximum-weight perfect matching.

    ``None`` entries are forbidden.  Returns None when no perfect matching
    avoids them.  The potentials satisfy ``u[i] + v[j] >= w[i][j]`` on every
    allowed edge, with equality along the matching.
    """
    n = len(weights)
    inf = float("inf")
    # Minimisation form on cost = -weight, 1-indexed with a dummy column 0.
    cost = [[inf if w is None else -w for w in row] for row in weights]
    u = [0] * (n + 1)
    v = [0] * (n + 1)
    match = [0] * (n + 1)  # match[j] = row assigned to column j
    way = [0] * (n + 1)
    for i in range(1, n + 1):
        match[0] = i
        j0 = 0
        minv = [inf] * (n + 1)
        used = [False] * (n + 1)
        while True:
            used[j0] = True
            i0 = match[j0]
            delta, j1 = inf, -1
            for j in range(1, n + 1):
                if used[j]:
                    continue
                c = cost[i0 - 1][j - 1]
                if c != inf:
                    cur = c - u[i0] - v[j]
                    if cur < minv[j]:
                        minv[j] = cur
                        way[j] = j0
                if minv[j] < delta:
                    delta, j1 = minv[j], j
            if j1 < 0:
                return None
            for j in range(n + 1):
                if used[j]:
                    u[match[j]] += delta
                    v[j] -= delta
                else:
                    minv[j] -= delta
            j0 = j1
            if match[j0] == 0:
                break
        while j0:
            j1 = way[j0]
            match[j0] = match[j1]
            j0 = j1
    perm = [0] * n
    for j in range(1, n + 1):
        perm[match[j] - 1] = j - 1
    value = sum(weights[i][perm[i]] for i in range(n))
    return Assignment(tuple(perm), value,
                      tuple(-x for x in u[1:]), tuple(-x for x in v[1:]))


def _weights(m: OreMatrix) -> list[list[Optional[int]]]:
    return [[None if e.is_zero() else e.order for e in row] for row in m.rows]


def total_order(m: OreMatrix) -> OrderValue:
    a = max_weight_assignment(_weights(m))
    return NEG_INF if a is None else a.value


def tord_bruteforce(m: OreMatrix) -> OrderValue:
    if m.n > 8:
        raise ValueError("brute-force total order is limited to n <= 8")
    orders = m.orders()
    return max(sum(orders[i][p[i]] for i in range(m.n)) for p in permutations(range(m.n)))


def is_majorant(m: OreMatrix, maj: Majorant) -> bool:
    if maj.n != m.n:
        raise ValueError(f"majorant has length {maj.n}, matrix has size {m.n}")
    return all(m[i, j].order <= maj.bound(i, j) for i in range(m.n) for j in range(m.n))


def is_optimal(m: OreMatrix, maj: Majorant) -> bool:
    return is_majorant(m, maj) and maj.weight == total_order(m)


def optimal_majorant(m: OreMatrix) -> Majorant:
    a = max_weight_assignment(_weights(m))
    if a is None:
        raise ZeroDeterminantError("total order is -inf: no optimal majorant, determinant is zero")
    # u_i + v_j >= w_ij  <=>  w_ij <= N_j - h_i  with h = -u, N = v
    return Majorant(a.col_potential, [-x for x in a.row_potential]).normalized()


@dataclass(frozen=True)
class CharMatrix:
    """Coefficients C with full entry ``C[i][j] * lambda**(N_j - h_i)``."""

    C: tuple
    total_power: int


def characteristic_matrix(m: OreMatrix, maj: Majorant) -> CharMatrix:
    if not is_majorant(m, maj):
        raise NotMajorantError(f"{maj} is not a majorant of the matrix")
    n = m.n
    grid = tuple(tuple(m[i, j].coeff(maj.bound(i, j)) for j in range(n)) for i in range(n))
    return CharMatrix(grid, maj.weight)


def char_det(m: OreMatrix, maj: Majorant) -> tuple[RatFunc, int]:
    """``det(C) * lambda**power``: every permutation term has the same degree."""
    cm = characteristic_matrix(m, maj)
    return bareiss_det(cm.C), cm.total_power


def degeneracy_degree(m: OreMatrix, det: Optional[DieudonneDet] = None) -> int:
    det = det if det is not None else dieudonne_det(m)
    if det.is_zero:
        raise ZeroDeterminantError("degeneracy degree is undefined for a zero determinant")
    return total_order(m) - det.d


def perturbed_majorants(maj: Majorant) -> list[Majorant]:
    """Non-optimal majorants obtained by raising a single N_j by one."""
    return [Majorant([v + (j == k) for j, v in enumerate(maj.N)], maj.h) for k in range(maj.n)]


@dataclass
class DegeneracyReport:
    tord: OrderValue
    d: OrderValue
    dd: int
    optimal: Optional[Majorant]
    char_dets: list = field(default_factory=list)  # (majorant, optimal?, coeff, power)
    clauses: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.clauses.values())


def check_degeneracy_clauses(m: OreMatrix, sampled: Sequence[Majorant] = (),
                      det: Optional[DieudonneDet] = None) -> DegeneracyReport:
    """Check the four clauses on ``m`` and the optimal plus sampled majorants.

    The perturbations of the optimal majorant are always added to the sample.
    """
    det = det if det is not None else dieudonne_det(m)
    if det.is_zero:
        raise ZeroDeterminantError("the degeneracy clauses need a nonzero determinant")
    tord = total_order(m)
    dd = tord - det.d
    report = DegeneracyReport(tord=tord, d=det.d, dd=dd, optimal=None)
    report.clauses["i"] = dd >= 0
    try:
        opt = optimal_majorant(m)
    except ZeroDeterminantError:
        report.clauses["ii"] = False
        return report
    report.optimal = opt
    report.clauses["ii"] = is_majorant(m, opt) and opt.weight == tord

    candidates = [opt, *perturbed_majorants(opt), *sampled]
    iii = iv = True
    for maj in candidates:
        if not is_majorant(m, maj):
            continue
        optimal = maj.weight == tord
        coeff, power = char_det(m, maj)
        report.char_dets.append((maj, optimal, coeff, power))
        if dd >= 1:
            iii = iii and coeff.is_zero()
        elif optimal:
            iv = iv and coeff == det.det1 and power == det.d
        else:
            iv = iv and coeff.is_zero()
    report.clauses["iii"] = iii
    report.clauses["iv"] = iv
    return report
