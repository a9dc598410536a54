"""Command-line front end: ``oredet <command> [FILE] [options]``.

Exit codes: 0 success, 1 unreadable or malformed input, 2 a mathematical
precondition failed (zero determinant, wrong degeneracy degree, ...),
3 an internal cross-check failed or ``check`` found a failing instance.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence, TextIO

from .cdsk import cdsk_reduce, verify_certificate, verify_membership
from .dieudonne import DieudonneDet, OreMatrix, dieudonne_det
from .errors import ConsistencyError, InputError, MatrixFormatError, OreDetError
from .expr import render_poly, render_ratfunc
from .generate import TARGETS, GeneratorConfig, random_instance
from .linalg import bareiss_det
from .io import certificate_to_json, matrix_to_document, parse_matrix_file
from .majorant import (
    Majorant,
    characteristic_matrix,
    check_degeneracy_clauses,
    degeneracy_degree,
    optimal_majorant,
    total_order,
)
from .ore import NEG_INF

MATRIX_COMMANDS = ("det", "tord", "dd", "majorant", "charmat", "cdsk")


class _Parser(argparse.ArgumentParser):
    """argparse exits with status 2 on usage errors; those are input errors here."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _order_str(v) -> str:
    return "-inf" if v == NEG_INF else str(v)


def _order_json(v):
    return "-inf" if v == NEG_INF else v


def parse_majorant(text: str, n: Optional[int] = None) -> Majorant:
    """Parse ``"N1,..,Nn;h1,..,hn"``."""
    try:
        left, right = text.split(";")
        N = [int(v) for v in left.split(",")]
        h = [int(v) for v in right.split(",")]
    except ValueError as exc:
        raise InputError(f"majorant must look like 'N1,..,Nn;h1,..,hn', got {text!r}") from exc
    if len(N) != len(h):
        raise InputError("majorant vectors N and h have different lengths")
    if n is not None and len(N) != n:
        raise InputError(f"majorant has length {len(N)} but the matrix is {n} x {n}")
    return Majorant(N, h)


def _det_text(det: DieudonneDet) -> str:
    return f"det_1 = {render_ratfunc(det.det1)}, d = {_order_str(det.d)}"


def _det_json(det: DieudonneDet) -> dict:
    return {"det1": render_ratfunc(det.det1), "d": _order_json(det.d)}


def _majorant_json(maj: Majorant) -> dict:
    return {"N": list(maj.N), "h": list(maj.h)}


def _grid_text(grid, fmt) -> list[str]:
    cells = [[fmt(v) for v in row] for row in grid]
    width = max(len(c) for row in cells for c in row)
    return ["[ " + "  ".join(c.rjust(width) for c in row) + " ]" for row in cells]


# ----------------------------------------------------------------------------
# matrix commands


def cmd_det(m: OreMatrix, args) -> tuple[str, dict]:
    det = dieudonne_det(m)
    return _det_text(det), _det_json(det)


def cmd_tord(m: OreMatrix, args) -> tuple[str, dict]:
    t = total_order(m)
    return f"tord = {_order_str(t)}", {"tord": _order_json(t)}


def cmd_dd(m: OreMatrix, args) -> tuple[str, dict]:
    det = dieudonne_det(m)
    dd = degeneracy_degree(m, det)
    t = total_order(m)
    text = f"dd = {dd} (tord = {t}, d = {det.d})"
    return text, {"dd": dd, "tord": t, "d": det.d}


def cmd_majorant(m: OreMatrix, args) -> tuple[str, dict]:
    maj = optimal_majorant(m)
    text = "\n".join([
        f"N = ({', '.join(map(str, maj.N))})",
        f"h = ({', '.join(map(str, maj.h))})",
        f"tord = {maj.weight}",
    ])
    return text, {**_majorant_json(maj), "tord": maj.weight}


def cmd_charmat(m: OreMatrix, args) -> tuple[str, dict]:
    maj = parse_majorant(args.majorant, m.n) if args.majorant else optimal_majorant(m)
    cm = characteristic_matrix(m, maj)
    det = bareiss_det(cm.C)
    optimal = maj.weight == total_order(m)
    n = m.n

    def cell(i: int, j: int) -> str:
        c = cm.C[i][j]
        return "0" if c.is_zero() else f"({render_ratfunc(c)})*l^{maj.bound(i, j)}"

    lines = [f"majorant N = {list(maj.N)}, h = {list(maj.h)} ({'optimal' if optimal else 'not optimal'})"]
    lines += _grid_text([[cell(i, j) for j in range(n)] for i in range(n)], str)
    lines.append(f"det = {render_ratfunc(det)} * l^{cm.total_power}")
    doc = {
        "majorant": _majorant_json(maj),
        "optimal": optimal,
        "entries": [[render_ratfunc(v) for v in row] for row in cm.C],
        "powers": [[maj.bound(i, j) for j in range(n)] for i in range(n)],
        "det": render_ratfunc(det),
        "power": cm.total_power,
    }
    return "\n".join(lines), doc


def cmd_cdsk(m: OreMatrix, args) -> tuple[str, dict]:
    cert = cdsk_reduce(m)
    problems = verify_certificate(cert, check_det=False)
    if problems:
        raise ConsistencyError("certificate does not replay: " + "; ".join(problems))
    u = cert.uniform
    lines = [
        _det_text(cert.det),
        f"optimal majorant N = {list(cert.majorant.N)}, h = {list(cert.majorant.h)}",
        f"uniform order N - h = {u.width} (column pads {list(u.col_pads)}, row pads {list(u.row_pads)})",
        "leading matrix A:",
        *_grid_text(cert.split.A, render_ratfunc),
        "relation c = (" + ", ".join(render_poly(p) for p in cert.relation.c) + ")"
        + (f", rows 1 and {cert.relation.pivot + 1} swapped" if cert.swapped else ""),
        "M'' characteristic matrix:",
        *_grid_text(cert.Mpp_char, render_ratfunc),
        f"det(M''_char) = {render_poly(cert.char_det)} = c_1 * ({render_poly(cert.sign * cert.D)})",
        "summands / c_1: " + ", ".join(render_poly(q) for q in cert.summand_quotients),
        f"D = {render_poly(cert.D)} (in R)",
    ]
    return "\n".join(lines), certificate_to_json(cert)


COMMANDS = {
    "det": cmd_det,
    "tord": cmd_tord,
    "dd": cmd_dd,
    "majorant": cmd_majorant,
    "charmat": cmd_charmat,
    "cdsk": cmd_cdsk,
}


# ----------------------------------------------------------------------------
# generator and harness


def _config(args, seed: int, target: Optional[str] = None) -> GeneratorConfig:
    try:
        return GeneratorConfig(
            n=args.n, max_ord=args.max_ord, max_deg=args.max_deg,
            max_num=args.max_num, max_den=args.max_den, seed=seed,
            target=target or args.target,
        )
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def cmd_gen(args, out: TextIO) -> int:
    for k in range(args.count):
        inst = random_instance(_config(args, args.seed + k))
        meta = {"seed": inst.seed, "target": args.target, "dd": inst.dd, "attempts": inst.attempts}
        doc = matrix_to_document(inst.matrix, meta)
        out.write(json.dumps(doc, indent=None if args.count > 1 else 2) + "\n")
    return 0


@dataclass
class CheckResult:
    seed: int
    n: int
    dd: Optional[int] = None
    failures: list = field(default_factory=list)
    document: Optional[dict] = None


def check_instance(cfg: GeneratorConfig) -> CheckResult:
    """Generate one instance and run every applicable check on it."""
    res = CheckResult(seed=cfg.seed, n=cfg.n)
    try:
        inst = random_instance(cfg)
    except OreDetError as exc:
        res.failures.append(f"generation: {exc}")
        return res
    m = inst.matrix
    res.document = matrix_to_document(m, {"seed": cfg.seed})
    try:
        det = dieudonne_det(m)
        if det.is_zero:
            return res
        report = check_degeneracy_clauses(m, det=det)
        res.dd = report.dd
        res.failures += [f"clause {k} fails" for k, ok in report.clauses.items() if not ok]
        if report.dd <= 1 and not verify_membership(m, det):
            res.failures.append(f"dd = {report.dd} but det_1 = {render_ratfunc(det.det1)} is not in R")
        if report.dd == 1:
            cert = cdsk_reduce(m)
            res.failures += [f"certificate: {p}" for p in verify_certificate(cert, check_det=False)]
    except OreDetError as exc:
        res.failures.append(f"{type(exc).__name__}: {exc}")
    return res


def run_check(configs: Sequence[GeneratorConfig], jobs: int = 1) -> list[CheckResult]:
    """Check every config; results come back in input order whatever ``jobs`` is."""
    if jobs <= 1:
        return [check_instance(c) for c in configs]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(check_instance, configs))


def cmd_check(args, out: TextIO) -> int:
    configs = [_config(args, args.seed + k) for k in range(args.count)]
    results = run_check(configs, args.jobs)
    tally: dict = {}
    failed = [r for r in results if r.failures]
    for r in results:
        key = "zero det" if r.dd is None else f"dd={r.dd}"
        tally[key] = tally.get(key, 0) + 1
    for r in failed:
        out.write(f"FAIL seed {r.seed}: {'; '.join(r.failures)}\n")
        if r.document is not None:
            out.write(f"  matrix: {json.dumps(r.document)}\n")
    breakdown = ", ".join(f"{k}: {v}" for k, v in sorted(tally.items()))
    out.write(f"checked {len(results)} instances (seeds {args.seed}..{args.seed + args.count - 1}); "
              f"{len(failed)} failures [{breakdown}]\n")
    return 3 if failed else 0


# ----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="oredet", description="Dieudonné determinants of differential operator matrices.")
    p.add_argument("command", choices=[*MATRIX_COMMANDS, "gen", "check"])
    p.add_argument("file", nargs="?", help="matrix JSON file ('-' for stdin)")
    p.add_argument("--json", action="store_true", help="print JSON instead of text")
    p.add_argument("--majorant", help="majorant 'N1,..,Nn;h1,..,hn' for charmat")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--max-ord", type=int, default=2)
    p.add_argument("--max-deg", type=int, default=2)
    p.add_argument("--max-num", type=int, default=3)
    p.add_argument("--max-den", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--target", choices=TARGETS, default="any")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for check")
    return p


def run_command(argv: Optional[Sequence[str]] = None, out: TextIO = None, err: TextIO = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        if args.count < 1:
            raise InputError("--count must be at least 1")
        if args.command == "gen":
            return cmd_gen(args, out)
        if args.command == "check":
            return cmd_check(args, out)
        if args.file is None:
            raise MatrixFormatError(f"'{args.command}' needs a matrix FILE")
        m = parse_matrix_file(sys.stdin if args.file == "-" else args.file)
        text, doc = COMMANDS[args.command](m, args)
        out.write((json.dumps(doc, indent=2) if args.json else text) + "\n")
        return 0
    except OreDetError as exc:
        err.write(f"oredet {args.command}: {exc}\n")
        return exc.exit_code


def main(argv: Optional[Sequence[str]] = None) -> None:
    sys.exit(run_command(argv))


if __name__ == "__main__":
    main()
