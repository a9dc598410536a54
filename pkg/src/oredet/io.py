"""JSON matrix documents and certificate serialisation.

A matrix document looks like::

    {"n": 2, "entries": [["d", "d"], ["d", "d+1"]], "meta": {"seed": 7}}

Certificates store every operator and polynomial as a canonical expression
string, so they can be read back with :func:`certificate_from_json` and
replayed by :func:`oredet.cdsk.verify_certificate`.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import IO, Any, Optional, Union

from .arith import Poly, RatFunc
from .cdsk import Dd1Certificate, LeadingSplit, RelationVector, UniformForm
from .dieudonne import DieudonneDet, OreMatrix
from .errors import MatrixFormatError, ParseError
from .expr import parse_operator_expr, render_operator, render_ratfunc
from .majorant import Majorant
from .ore import NEG_INF


def matrix_to_document(m: OreMatrix, meta: Optional[dict] = None) -> dict:
    doc: dict[str, Any] = {"n": m.n, "entries": [[render_operator(e) for e in row] for row in m.rows]}
    if meta:
        doc["meta"] = meta
    return doc


def matrix_from_document(doc: Any) -> OreMatrix:
    if not isinstance(doc, dict):
        raise MatrixFormatError("matrix document must be a JSON object")
    entries = doc.get("entries")
    if not isinstance(entries, list) or not entries:
        raise MatrixFormatError("'entries' must be a non-empty list of rows")
    n = doc.get("n", len(entries))
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise MatrixFormatError("'n' must be a positive integer")
    if len(entries) != n:
        raise MatrixFormatError(f"'n' is {n} but there are {len(entries)} rows")
    rows = []
    for i, row in enumerate(entries):
        if not isinstance(row, list) or len(row) != n:
            got = len(row) if isinstance(row, list) else type(row).__name__
            raise MatrixFormatError(f"row {i + 1} must have {n} entries, got {got}")
        parsed = []
        for j, text in enumerate(row):
            if not isinstance(text, (str, int)):
                raise MatrixFormatError(f"entry ({i + 1},{j + 1}) must be a string")
            try:
                parsed.append(parse_operator_expr(str(text)))
            except ParseError as exc:
                raise ParseError(f"entry ({i + 1},{j + 1}): {exc}") from exc
        rows.append(parsed)
    return OreMatrix(rows)


def parse_matrix_file(source: Union[str, Path, IO[str]]) -> OreMatrix:
    try:
        if hasattr(source, "read"):
            text = source.read()
        else:
            text = Path(source).read_text(encoding="utf-8")
    except OSError as exc:
        raise MatrixFormatError(f"cannot read {source}: {exc.strerror}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MatrixFormatError(f"malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    return matrix_from_document(doc)


def write_matrix_file(m: OreMatrix, path: Union[str, Path], meta: Optional[dict] = None) -> None:
    Path(path).write_text(json.dumps(matrix_to_document(m, meta), indent=2) + "\n", encoding="utf-8")


def _rf(f: RatFunc) -> str:
    return render_ratfunc(f)


def _parse_rf(text: str) -> RatFunc:
    op = parse_operator_expr(text)
    if op.order > 0:
        raise ParseError(f"expected a function of x, got {text!r}")
    return op.coeff(0)


def _parse_poly(text: str) -> Poly:
    f = _parse_rf(text)
    if not f.in_ring():
        raise ParseError(f"expected a polynomial, got {text!r}")
    return f.num


def _grid(g) -> list:
    return [[_rf(f) for f in row] for row in g]


def _parse_grid(g) -> tuple:
    return tuple(tuple(_parse_rf(s) for s in row) for row in g)


def _order(v) -> Union[int, str]:
    return "-inf" if v == NEG_INF else int(v)


def _majorant(m: Majorant) -> dict:
    return {"N": list(m.N), "h": list(m.h)}


def certificate_to_json(cert: Dd1Certificate) -> dict:
    u = cert.uniform
    return {
        "matrix": matrix_to_document(cert.M)["entries"],
        "det": {"det1": _rf(cert.det.det1), "d": _order(cert.det.d)},
        "tord": cert.det.d + 1,
        "dd": 1,
        "majorant": _majorant(cert.majorant),
        "uniform": {
            "N": u.N, "h": u.h,
            "col_pads": list(u.col_pads), "row_pads": list(u.row_pads),
            "matrix": matrix_to_document(u.Mp)["entries"],
        },
        "leading": {"A": _grid(cert.split.A), "B": _grid(cert.split.B)},
        "relation": {"c": [_rf(RatFunc(p)) for p in cert.relation.c], "pivot": cert.relation.pivot},
        "swapped": cert.swapped,
        "mpp": {
            "matrix": matrix_to_document(cert.Mpp)["entries"],
            "majorant": _majorant(cert.Mpp_majorant),
            "char": _grid(cert.Mpp_char),
        },
        "summands": [_rf(RatFunc(p)) for p in cert.summands],
        "summand_quotients": [_rf(RatFunc(p)) for p in cert.summand_quotients],
        "char_det": _rf(RatFunc(cert.char_det)),
        "c1": _rf(RatFunc(cert.c1)),
        "D": _rf(RatFunc(cert.D)),
        "D_in_R": True,
        "justification": (
            "det(M''_char) = sum_i det(M''_i); M''_1 has first row c1*B_1; for i > 1, "
            "moving c_i onto row i and adding c_j*row_j (j != 1) turns row i into -c1*A_1"
        ),
    }


def _ops(rows) -> OreMatrix:
    return OreMatrix([[parse_operator_expr(s) for s in row] for row in rows])


def certificate_from_json(doc: dict) -> Dd1Certificate:
    try:
        u = doc["uniform"]
        det = doc["det"]
        d = NEG_INF if det["d"] == "-inf" else int(det["d"])
        return Dd1Certificate(
            M=_ops(doc["matrix"]),
            det=DieudonneDet(_parse_rf(det["det1"]), d),
            majorant=Majorant(doc["majorant"]["N"], doc["majorant"]["h"]),
            uniform=UniformForm(_ops(u["matrix"]), int(u["N"]), int(u["h"]),
                                tuple(u["col_pads"]), tuple(u["row_pads"])),
            split=LeadingSplit(_parse_grid(doc["leading"]["A"]), _parse_grid(doc["leading"]["B"])),
            relation=RelationVector(tuple(_parse_poly(s) for s in doc["relation"]["c"]),
                                    int(doc["relation"]["pivot"])),
            swapped=bool(doc["swapped"]),
            Mpp=_ops(doc["mpp"]["matrix"]),
            Mpp_majorant=Majorant(doc["mpp"]["majorant"]["N"], doc["mpp"]["majorant"]["h"]),
            Mpp_char=_parse_grid(doc["mpp"]["char"]),
            summands=tuple(_parse_poly(s) for s in doc["summands"]),
            summand_quotients=tuple(_parse_poly(s) for s in doc["summand_quotients"]),
            char_det=_parse_poly(doc["char_det"]),
            D=_parse_poly(doc["D"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise MatrixFormatError(f"malformed certificate: {exc}") from exc

