"""Exact Dieudonné determinants of matrices of differential operators.

The ring is K[d] with K = Q(x) and d = d/dx, subject to ``d*f = f*d + f'``.
The package computes Dieudonné determinants, total orders, optimal
majorants, characteristic matrices and degeneracy degrees, and runs the
degeneracy-one reduction that certifies ``det_1`` is a polynomial.
"""

from .arith import ONE, ZERO, Poly, RatFunc, content_and_primitive, derive, poly_gcd
from .cdsk import Dd1Certificate, cdsk_reduce, verify_certificate, verify_membership
from .dieudonne import DieudonneDet, OreMatrix, dieudonne_det, triangularize
from .errors import (
    ConsistencyError,
    DomainError,
    InputError,
    OreDetError,
    ParseError,
)
from .expr import parse_operator_expr, render_operator
from .generate import GeneratorConfig, random_instance, random_matrix
from .io import certificate_from_json, certificate_to_json, parse_matrix_file
from .majorant import (
    Majorant,
    char_det,
    characteristic_matrix,
    check_degeneracy_clauses,
    degeneracy_degree,
    optimal_majorant,
    total_order,
)
from .ore import OreOp, ore_mul, right_divmod

__version__ = "0.1.0"

__all__ = [
    "ONE", "ZERO", "Poly", "RatFunc", "content_and_primitive", "derive", "poly_gcd",
    "Dd1Certificate", "cdsk_reduce", "verify_certificate", "verify_membership",
    "DieudonneDet", "OreMatrix", "dieudonne_det", "triangularize",
    "ConsistencyError", "DomainError", "InputError", "OreDetError", "ParseError",
    "parse_operator_expr", "render_operator",
    "GeneratorConfig", "random_instance", "random_matrix",
    "certificate_from_json", "certificate_to_json", "parse_matrix_file",
    "Majorant", "char_det", "characteristic_matrix", "check_degeneracy_clauses",
    "degeneracy_degree", "optimal_majorant", "total_order",
    "OreOp", "ore_mul", "right_divmod",
]
