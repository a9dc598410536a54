from __future__ import annotations

from fractions import Fraction

from hypothesis import strategies as st

from oredet.arith import Poly, RatFunc
from oredet.dieudonne import OreMatrix
from oredet.expr import parse_operator_expr
from oredet.ore import OreOp


def op(text: str) -> OreOp:
    return parse_operator_expr(text)


def mat(rows) -> OreMatrix:
    return OreMatrix([[op(e) if isinstance(e, str) else e for e in row] for row in rows])


def poly(*coeffs) -> Poly:
    return Poly(coeffs)


X = Poly.x()


small_rationals = st.builds(
    Fraction,
    st.integers(-6, 6),
    st.integers(1, 4),
)


def polys(max_deg: int = 4, allow_zero: bool = True):
    s = st.lists(small_rationals, min_size=0 if allow_zero else 1, max_size=max_deg + 1).map(Poly)
    return s if allow_zero else s.filter(lambda p: not p.is_zero())


def nonzero_polys(max_deg: int = 4):
    return polys(max_deg, allow_zero=False)


def ratfuncs(max_deg: int = 3):
    return st.builds(RatFunc, polys(max_deg), nonzero_polys(max_deg))


def operators(max_ord: int = 3, max_deg: int = 3, coeffs=None):
    coeffs = coeffs if coeffs is not None else ratfuncs(max_deg)
    return st.lists(coeffs, max_size=max_ord + 1).map(OreOp)


def poly_operators(max_ord: int = 2, max_deg: int = 2):
    return operators(max_ord, max_deg, polys(max_deg).map(RatFunc))


@st.composite
def ore_matrices(draw, n=None, max_ord: int = 2, max_deg: int = 2, rational: bool = False):
    n = n if n is not None else draw(st.integers(1, 3))
    entries = operators(max_ord, max_deg) if rational else poly_operators(max_ord, max_deg)
    return OreMatrix([[draw(entries) for _ in range(n)] for _ in range(n)])
