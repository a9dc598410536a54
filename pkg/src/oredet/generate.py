"""Seeded random matrices over R[d], optionally targeted at dd = 0 or dd = 1.

Degeneracy is targeted by rejection sampling.  For ``dd1`` the proposals
are biased towards a singular leading matrix: a uniform-order matrix whose
leading coefficient rows contain a polynomial multiple of another row,
followed by random d-padding of rows and columns so that the optimal
majorant is not uniform.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .arith import Poly
from .cdsk import pad_columns_and_rows
from .dieudonne import OreMatrix, dieudonne_det
from .errors import GenerationError
from .majorant import total_order
from .ore import OreOp

TARGETS = ("any", "dd0", "dd1")


@dataclass(frozen=True)
class GeneratorConfig:
    n: int = 2
    max_ord: int = 2
    max_deg: int = 2
    max_num: int = 3
    max_den: int = 1
    seed: int = 0
    target: str = "any"
    zero_prob: float = 0.15
    max_attempts: int = 500

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be at least 1")
        for name in ("max_ord", "max_deg", "max_num", "max_attempts"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")
        if self.max_den < 1:
            raise ValueError("max_den must be at least 1")
        if self.target not in TARGETS:
            raise ValueError(f"target must be one of {', '.join(TARGETS)}")


@dataclass(frozen=True)
class GeneratedInstance:
    matrix: OreMatrix
    dd: Optional[int]  # None when the determinant is zero
    attempts: int
    seed: int


def _coefficient(rng: random.Random, cfg: GeneratorConfig) -> Fraction:
    return Fraction(rng.randint(-cfg.max_num, cfg.max_num), rng.randint(1, cfg.max_den))


def random_poly(rng: random.Random, cfg: GeneratorConfig, nonzero: bool = False) -> Poly:
    while True:
        deg = rng.randint(0, cfg.max_deg)
        p = Poly(_coefficient(rng, cfg) for _ in range(deg + 1))
        if p or not nonzero:
            return p


def random_operator(rng: random.Random, cfg: GeneratorConfig) -> OreOp:
    if rng.random() < cfg.zero_prob:
        return OreOp()
    order = rng.randint(0, cfg.max_ord)
    coeffs = [random_poly(rng, cfg) for _ in range(order)]
    coeffs.append(random_poly(rng, cfg, nonzero=True))
    return OreOp(coeffs)


def _plain_proposal(rng: random.Random, cfg: GeneratorConfig) -> OreMatrix:
    return OreMatrix([[random_operator(rng, cfg) for _ in range(cfg.n)] for _ in range(cfg.n)])


def _singular_leading_proposal(rng: random.Random, cfg: GeneratorConfig) -> OreMatrix:
    n = cfg.n
    k = rng.randint(min(1, cfg.max_ord), cfg.max_ord)
    lead = [[random_poly(rng, cfg) for _ in range(n)] for _ in range(n)]
    target, source = rng.sample(range(n), 2)
    factor = random_poly(rng, cfg, nonzero=True)
    lead[target] = [factor * p for p in lead[source]]
    if rng.random() < 0.5:
        # still a combination of the other rows, so the leading matrix stays singular
        other = rng.choice([r for r in range(n) if r != target])
        mix = random_poly(rng, cfg)
        lead[target] = [a + mix * b for a, b in zip(lead[target], lead[other])]
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            lower = [random_poly(rng, cfg) if rng.random() > cfg.zero_prob else Poly() for _ in range(k)]
            row.append(OreOp(lower + [lead[i][j]]))
        rows.append(row)
    m = OreMatrix(rows)
    # pads raise orders by at most one per row and per column; stay within max_ord
    slack = cfg.max_ord - k
    col_pads = [rng.choice((0, 0, 1)) if slack >= 1 else 0 for _ in range(n)]
    row_slack = slack - max(col_pads)
    row_pads = [rng.choice((0, 0, 1)) if row_slack >= 1 else 0 for _ in range(n)]
    return pad_columns_and_rows(m, col_pads, row_pads)


def _degeneracy(m: OreMatrix) -> Optional[int]:
    det = dieudonne_det(m)
    if det.is_zero:
        return None
    return total_order(m) - det.d


def random_instance(cfg: GeneratorConfig) -> GeneratedInstance:
    rng = random.Random(cfg.seed)
    if cfg.target == "any":
        m = _plain_proposal(rng, cfg)
        return GeneratedInstance(m, _degeneracy(m), 1, cfg.seed)
    if cfg.target == "dd1" and cfg.n < 2:
        raise GenerationError("a 1 x 1 matrix always has degeneracy degree 0")
    wanted = 0 if cfg.target == "dd0" else 1
    for attempt in range(1, cfg.max_attempts + 1):
        if wanted == 1 and rng.random() < 0.85:
            m = _singular_leading_proposal(rng, cfg)
        else:
            m = _plain_proposal(rng, cfg)
        dd = _degeneracy(m)
        if dd == wanted:
            return GeneratedInstance(m, dd, attempt, cfg.seed)
    raise GenerationError(f"no {cfg.target} matrix found in {cfg.max_attempts} attempts (seed {cfg.seed})")


def random_matrix(cfg: GeneratorConfig) -> OreMatrix:
    return random_instance(cfg).matrix
