from __future__ import annotations

import io
import json
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, settings

from oredet.arith import Poly, RatFunc
from oredet.cdsk import cdsk_reduce, verify_certificate
from oredet.cli import parse_majorant, run_command
from oredet.errors import InputError, MatrixFormatError, ParseError
from oredet.expr import parse_operator_expr, render_operator
from oredet.io import (
    certificate_from_json,
    certificate_to_json,
    matrix_from_document,
    matrix_to_document,
    parse_matrix_file,
    write_matrix_file,
)
from oredet.ore import OreOp

from .conftest import X, mat, operators

FIXTURES = Path(__file__).parent / "fixtures"
D = OreOp.d()


def run(*argv: str) -> tuple[int, str, str]:
    out, err = io.StringIO(), io.StringIO()
    code = run_command(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


# -- expressions -----------------------------------------------------------


@pytest.mark.parametrize(
    "text, expected",
    [
        ("d*x", OreOp([RatFunc(1), RatFunc(X)])),
        ("x*d^2 + (1/2)*d", OreOp([RatFunc(0), RatFunc(Poly.const(Fraction(1, 2))), RatFunc(X)])),
        ("(x*d)^2", OreOp([RatFunc(0), RatFunc(X), RatFunc(X * X)])),
        ("  d  *  x ", OreOp([RatFunc(1), RatFunc(X)])),
        ("-d + 3", OreOp([RatFunc(3), RatFunc(-1)])),
        ("∂^2", D * D),
    ],
)
def test_parse_examples(text, expected):
    assert parse_operator_expr(text) == expected


def test_division_is_right_multiplication_by_the_inverse():
    assert parse_operator_expr("d/x") == D * OreOp.scalar(RatFunc(1, X))
    assert parse_operator_expr("1/x*d") == OreOp([RatFunc(0), RatFunc(1, X)])


@pytest.mark.parametrize(
    "text, column",
    [("d + ", 5), ("x ** 2", 4), ("(d", 3), ("d $ 1", 3), ("", 1), ("x^d", 3), ("1/0", 2), ("1/d", 2)],
)
def test_parse_errors_carry_a_column(text, column):
    with pytest.raises(ParseError) as info:
        parse_operator_expr(text)
    assert info.value.position == column - 1
    assert f"column {column}" in str(info.value)


@pytest.mark.parametrize(
    "a, expected",
    [
        (OreOp([RatFunc(1), RatFunc(X)]), "x*d + 1"),
        (OreOp(), "0"),
        (OreOp([RatFunc(0), RatFunc(Poly.const(Fraction(1, 2))), RatFunc(X)]), "x*d^2 + (1/2)*d"),
        (OreOp([RatFunc(-1, X * X), RatFunc(1, X)]), "1/x*d - 1/x^2"),
    ],
)
def test_render_examples(a, expected):
    assert render_operator(a) == expected


@settings(max_examples=500, deadline=None)
@given(operators(max_ord=3, max_deg=3))
def test_parse_render_roundtrip(a):
    assert parse_operator_expr(render_operator(a)) == a


# -- matrix files and certificates ----------------------------------------


def test_parse_matrix_file_example():
    assert parse_matrix_file(FIXTURES / "dd1.json") == mat([["d", "d"], ["d", "d + 1"]])


def test_non_square_file_is_a_shape_error():
    with pytest.raises(MatrixFormatError, match="row 2"):
        parse_matrix_file(FIXTURES / "nonsquare.json")


def test_bad_entry_reports_entry_and_column():
    with pytest.raises(ParseError, match=r"entry \(1,1\).*column 5"):
        parse_matrix_file(FIXTURES / "bad_entry.json")


def test_malformed_json_reports_line_and_column():
    with pytest.raises(MatrixFormatError, match="line 2 column 1"):
        parse_matrix_file(FIXTURES / "truncated.json")


def test_missing_file():
    with pytest.raises(MatrixFormatError):
        parse_matrix_file(FIXTURES / "absent.json")


def test_document_roundtrip(tmp_path):
    m = mat([["x*d^2 + 1", "1/x"], ["0", "d - x"]])
    assert matrix_from_document(matrix_to_document(m)) == m
    write_matrix_file(m, tmp_path / "m.json", {"seed": 3})
    assert parse_matrix_file(tmp_path / "m.json") == m
    assert json.loads((tmp_path / "m.json").read_text())["meta"] == {"seed": 3}


def test_stream_input():
    assert parse_matrix_file(io.StringIO('{"entries": [["d"]]}')) == mat([["d"]])


def test_certificate_json_roundtrip():
    cert = cdsk_reduce(mat([["d", "d"], ["d", "d + 1"]]))
    doc = json.loads(json.dumps(certificate_to_json(cert)))
    back = certificate_from_json(doc)
    assert back == cert
    assert verify_certificate(back) == []
    assert doc["D_in_R"] is True and doc["D"] == "1"


def test_parse_majorant():
    m = parse_majorant("2,1;0,1", 2)
    assert (m.N, m.h) == ((2, 1), (0, 1))
    for bad in ("2,1", "a;b", "1,2;0"):
        with pytest.raises(InputError):
            parse_majorant(bad)


# -- command line ----------------------------------------------------------


def test_det_on_sample_file():
    assert run("det", str(FIXTURES / "dd1.json")) == (0, "det_1 = 1, d = 1\n", "")


def test_matrix_commands_text_and_json():
    path = str(FIXTURES / "dd1.json")
    assert run("tord", path)[1] == "tord = 2\n"
    assert run("dd", path)[1].startswith("dd = 1")
    assert run("majorant", path)[1] == "N = (1, 1)\nh = (0, 0)\ntord = 2\n"
    code, out, _ = run("charmat", path, "--json")
    assert code == 0 and json.loads(out)["det"] == "0"
    code, out, _ = run("charmat", str(FIXTURES / "dd0.json"), "--majorant", "1,2;0,0", "--json")
    assert code == 0 and json.loads(out)["optimal"] is False and json.loads(out)["det"] == "0"
    code, out, _ = run("cdsk", path, "--json")
    assert code == 0 and json.loads(out)["D"] == "1"
    assert json.loads(run("det", path, "--json")[1]) == {"det1": "1", "d": 1}


def test_cdsk_on_dd0_file_exits_2():
    code, out, err = run("cdsk", str(FIXTURES / "dd0.json"))
    assert code == 2 and out == "" and "degeneracy degree is 0" in err


def test_non_square_file_exits_1():
    code, _, err = run("det", str(FIXTURES / "nonsquare.json"))
    assert code == 1 and "row 2" in err


def test_bad_entry_exits_1():
    code, _, err = run("det", str(FIXTURES / "bad_entry.json"))
    assert code == 1 and "column 5" in err


def test_dd_on_singular_matrix_exits_2(tmp_path):
    path = tmp_path / "singular.json"
    path.write_text('{"n": 2, "entries": [["d", "d"], ["d", "d"]]}')
    assert run("dd", str(path))[0] == 2


def test_usage_errors_exit_1():
    with pytest.raises(SystemExit) as info:
        run("frobnicate")
    assert info.value.code == 1
    assert run("det")[0] == 1
    assert run("charmat", str(FIXTURES / "dd1.json"), "--majorant", "0,0;0,0")[0] == 2


def test_gen_is_deterministic():
    a = run("gen", "--seed", "42", "--n", "2")
    b = run("gen", "--seed", "42", "--n", "2")
    assert a == b and a[0] == 0
    doc = json.loads(a[1])
    assert doc["meta"]["seed"] == 42
    matrix_from_document(doc)


def test_gen_targets_dd1():
    code, out, _ = run("gen", "--seed", "3", "--count", "3", "--target", "dd1")
    docs = [json.loads(line) for line in out.splitlines()]
    assert code == 0 and [d["meta"]["dd"] for d in docs] == [1, 1, 1]


def test_check_reports_no_failures():
    code, out, _ = run("check", "--count", "100", "--seed", "7")
    assert code == 0
    assert "checked 100 instances (seeds 7..106); 0 failures" in out


def test_check_output_is_ordered_and_job_independent():
    a = run("check", "--count", "6", "--seed", "1", "--target", "dd1", "--jobs", "2")
    b = run("check", "--count", "6", "--seed", "1", "--target", "dd1")
    assert a == b and a[0] == 0


def test_console_script_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "oredet", "det", str(FIXTURES / "dd1.json")],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and proc.stdout == "det_1 = 1, d = 1\n"
    proc = subprocess.run(
        [sys.executable, "-m", "oredet", "cdsk", str(FIXTURES / "dd0.json")],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 2
