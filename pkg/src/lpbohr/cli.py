"""Command-line front end.

Usage::

    lpbohr bohr-lp --p inf
    lpbohr landau-classical --M 2 --format text
    lpbohr coeffs --boundary extremal.json > table.json
    lpbohr majorant --table table.json --r-grid 0:0.9:0.01 --format csv
    lpbohr verify --seed 42 --trials 100 --out verdicts.jsonl

Reports are JSON lines with numbers at 15 significant digits. Coefficient
tables are written at full precision so they round-trip exactly.
Exit status: 0 success, 1 domain error (or failed verification), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Iterable

import numpy as np

from . import mappings, radii, spectral, verify
from ._validation import check_exponent, conjugate_exponent
from .errors import DomainError

__all__ = ["main", "build_parser", "parse_r_grid"]


class UsageError(Exception):
    """Malformed command-line input; exit status 2."""


# --- formatting -----------------------------------------------------------


def _sig15(obj):
    if isinstance(obj, float):
        if math.isinf(obj):
            return "inf" if obj > 0 else "-inf"
        if math.isnan(obj):
            return "nan"
        return float(f"{obj:.15g}")
    if isinstance(obj, dict):
        return {k: _sig15(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_sig15(v) for v in obj]
    if isinstance(obj, np.generic):
        return _sig15(obj.item())
    return obj


def _json_line(obj, exact: bool = False) -> str:
    return json.dumps(obj if exact else _sig15(obj))


def _num(x: float) -> str:
    return f"{x:.15g}"


def _csv(header: Iterable[str], rows: Iterable[Iterable[float]]) -> list[str]:
    return [",".join(header)] + [",".join(_num(float(v)) for v in row) for row in rows]


# --- input helpers ----------------------------------------------------------


def parse_r_grid(text: str) -> np.ndarray:
    """``start:stop:step``, both endpoints included within half a step."""
    try:
        start, stop, step = (float(s) for s in text.split(":"))
    except ValueError as exc:
        raise UsageError(f"--r-grid must be start:stop:step, got {text!r}") from exc
    if step <= 0 or stop < start:
        raise UsageError(f"--r-grid needs step > 0 and stop >= start, got {text!r}")
    count = int(math.floor((stop - start) / step + 0.5)) + 1
    return start + step * np.arange(count)


def _read_json(path: str, stdin):
    try:
        if path == "-":
            return json.load(stdin)
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON in {path}: {exc}") from exc


def _load_boundary(args, stdin) -> spectral.BoundarySpec:
    try:
        return spectral.boundary_from_dict(_read_json(args.boundary, stdin))
    except DomainError:
        raise
    except (ValueError, AttributeError) as exc:
        raise UsageError(f"malformed boundary spec: {exc}") from exc


def _load_table(args, stdin) -> mappings.CoeffTable:
    if args.table is not None:
        try:
            return mappings.table_from_dict(_read_json(args.table, stdin))
        except (ValueError, AttributeError) as exc:
            raise UsageError(f"malformed coefficient table: {exc}") from exc
    if args.boundary is not None:
        spec = _load_boundary(args, stdin)
        return mappings.table_for(spec, args.N, _grid(args), args.p)
    raise UsageError("one of --boundary or --table is required")


def _grid(args) -> spectral.CircleGrid | None:
    if getattr(args, "grid", None) is None:
        return None
    try:
        return spectral.CircleGrid(args.grid)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _parse_z(text: str) -> complex:
    try:
        if "," in text:
            re, im = text.split(",")
            return complex(float(re), float(im))
        return complex(text.replace(" ", ""))
    except ValueError as exc:
        raise UsageError(f"--z must be 're,im', got {text!r}") from exc


# --- subcommands ----------------------------------------------------------


def _emit_reports(reports, fmt: str) -> list[str]:
    if fmt == "text":
        out = []
        for r in reports:
            flags = f" [{', '.join(r.flags)}]" if r.flags else ""
            out.append(f"{r.name} = {_num(r.value)} ({r.method}, residual {r.residual:.3g}){flags}")
        return out
    if fmt == "csv":
        return ["name,value,method,residual"] + [
            f"{r.name},{_num(r.value)},{r.method},{_num(r.residual)}" for r in reports
        ]
    return [_json_line(radii.report_to_dict(r)) for r in reports]


def _cmd_cq(args, stdin):
    if args.q is not None:
        q = check_exponent(args.q, "q")
    elif args.p is not None:
        q = conjugate_exponent(args.p)
    else:
        raise UsageError("cq needs --q or --p")
    value = spectral.cq_constant(args.n, q)
    if args.format == "text":
        return [f"C_q = {_num(value)} (n={args.n}, q={q})"], 0
    if args.format == "csv":
        return _csv(["n", "q", "value"], [[args.n, q, value]]), 0
    return [_json_line({"name": "C_q", "value": value, "n": args.n, "q": q})], 0


def _cmd_reports(fn):
    def run(args, stdin):
        out = fn(args)
        reports = out if isinstance(out, tuple) else (out,)
        return _emit_reports(reports, args.format), 0

    return run


def _cmd_coeffs(args, stdin):
    spec = _load_boundary(args, stdin)
    table = mappings.table_for(spec, args.N, _grid(args), args.p)
    if args.format == "csv":
        rows = [[n, a.real, a.imag, b.real, b.imag] for n, (a, b) in enumerate(zip(table.a, table.b))]
        return [",".join(["n", "a_re", "a_im", "b_re", "b_im"])] + [
            ",".join(repr(float(v)) if i else str(int(v)) for i, v in enumerate(row)) for row in rows
        ], 0
    return [_json_line(mappings.table_to_dict(table), exact=True)], 0


def _cmd_majorant(args, stdin):
    table = _load_table(args, stdin)
    r = parse_r_grid(args.r_grid) if args.r_grid else np.array([args.r if args.r is not None else 0.0])
    value, tail = mappings.majorant(table, r)
    rows = list(zip(r, value, tail))
    if args.format == "csv":
        return _csv(["r", "value", "tail"], rows), 0
    if args.format == "text":
        return [f"r={_num(a)} M_f={_num(b)} tail<={_num(c)}" for a, b, c in rows], 0
    return [_json_line({"r": float(a), "value": float(b), "tail": float(c)}) for a, b, c in rows], 0


def _cmd_poisson(args, stdin):
    spec = _load_boundary(args, stdin)
    zs = [_parse_z(s) for s in (args.z or ["0"])]
    values = np.atleast_1d(mappings.poisson_extend(spec, np.array(zs), _grid(args)))
    rows = [[z.real, z.imag, f.real, f.imag] for z, f in zip(zs, values)]
    if args.format == "csv":
        return _csv(["z_re", "z_im", "f_re", "f_im"], rows), 0
    if args.format == "text":
        return [f"P[F]({_num(a)}{b:+.15g}i) = {_num(c)}{d:+.15g}i" for a, b, c, d in rows], 0
    return [_json_line({"z": [a, b], "f": [c, d]}) for a, b, c, d in rows], 0


def _cmd_empirical(args, stdin):
    table = _load_table(args, stdin)
    bound = 1.0 if args.M is None else args.M
    return _emit_reports([radii.empirical_bohr(table, bound, args.tol)], args.format), 0


def _cmd_verify(args, stdin):
    p_grid = verify.DEFAULT_P_GRID if args.p is None else tuple(check_exponent(s) for s in args.p.split(","))
    kwargs = {"p_grid": p_grid, "tolerance": args.tol, "N": args.N or 64}
    if args.grid is not None:
        kwargs["grid"] = _grid(args)
    cfg = verify.VerifyConfig(seed=args.seed, trials=args.trials, **kwargs)
    verdicts = verify.run_suite(cfg, landau_norm=args.norm)
    status = 0 if all(v.fail_count == 0 for v in verdicts) else 1
    if args.format == "text":
        lines = [
            f"{'PASS' if v.fail_count == 0 else 'FAIL'} {v.property_name}: "
            f"{v.pass_count} passed, {v.fail_count} failed, worst margin {_num(v.worst_margin)}"
            for v in verdicts
        ]
    else:
        lines = [_json_line(verify.verdict_to_dict(v)) for v in verdicts]
    return lines, status


# --- parser ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lpbohr", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, *flags):
        sp = sub.add_parser(name, help=help_text)
        sp.set_defaults(func=func)
        sp.add_argument("--format", choices=("json", "csv", "text"), default="json")
        sp.add_argument("--out", help="write output to this file instead of stdout")
        for flag in flags:
            _FLAGS[flag](sp)
        return sp

    add("cq", _cmd_cq, "the constant C_q", "n", "q", "p")
    add("bohr-bounded", _cmd_reports(lambda a: radii.bohr_bounded(a.a)), "Bohr radius for |f| <= M", "a")
    add("bohr-lp", _cmd_reports(lambda a: radii.bohr_lp(_req(a, "p"))), "Bohr radius for L^p boundary data", "p")
    add("landau-lp", _cmd_reports(lambda a: radii.landau_lp(_req(a, "p"), _req(a, "norm"))),
        "univalence and schlicht radii for L^p boundary data", "p", "norm")
    add("landau-classical", _cmd_reports(lambda a: radii.landau_classical(_req(a, "M"))),
        "classical Landau constants", "M")
    add("landau-c", _cmd_reports(lambda a: radii.landau_bounded(_req(a, "M"))),
        "Landau radii for bounded maps with J_f(0) = 1", "M")
    add("landau-d", _cmd_reports(lambda a: radii.landau_lipschitz(_req(a, "lambda_"))),
        "Landau radii for Lambda_f < Lambda", "lambda")
    add("coeffs", _cmd_coeffs, "coefficient table of a boundary function", "boundary", "N", "grid", "p")
    add("majorant", _cmd_majorant, "majorant series M_f(r) with tail bound",
        "boundary", "table", "N", "grid", "p", "r-grid", "r")
    add("poisson", _cmd_poisson, "Poisson extension at points", "boundary", "grid", "z")
    add("empirical-bohr", _cmd_empirical, "largest r with M_f(r) + tail <= bound",
        "boundary", "table", "N", "grid", "p", "M", "tol")
    vp = add("verify", _cmd_verify, "randomized property checks", "seed", "trials", "N", "grid", "norm")
    vp.add_argument("--p", help="comma-separated exponents (default 1,1.5,2,4,inf)")
    vp.add_argument("--tol", type=float, default=1e-9)
    return parser


_FLAGS = {
    "n": lambda sp: sp.add_argument("--n", type=int, default=1),
    "q": lambda sp: sp.add_argument("--q"),
    "p": lambda sp: sp.add_argument("--p", help="exponent in [1, inf]; 'inf' accepted"),
    "a": lambda sp: sp.add_argument("--a", type=float, default=0.0),
    "M": lambda sp: sp.add_argument("--M", type=float),
    "lambda": lambda sp: sp.add_argument("--lambda", dest="lambda_", type=float),
    "norm": lambda sp: sp.add_argument("--norm", type=float),
    "N": lambda sp: sp.add_argument("--N", type=int),
    "grid": lambda sp: sp.add_argument("--grid", type=int, help="quadrature node count"),
    "tol": lambda sp: sp.add_argument("--tol", type=float, default=1e-12),
    "seed": lambda sp: sp.add_argument("--seed", type=int, default=42),
    "trials": lambda sp: sp.add_argument("--trials", type=int, default=100),
    "boundary": lambda sp: sp.add_argument("--boundary", metavar="PATH|-"),
    "table": lambda sp: sp.add_argument("--table", metavar="PATH|-"),
    "r-grid": lambda sp: sp.add_argument("--r-grid", dest="r_grid", metavar="START:STOP:STEP"),
    "r": lambda sp: sp.add_argument("--r", type=float),
    "z": lambda sp: sp.add_argument("--z", action="append", metavar="RE,IM"),
}


def _req(args, name):
    value = getattr(args, name)
    if value is None:
        raise UsageError(f"--{name.rstrip('_')} is required")
    return value


def main(argv=None, stdin=None, stdout=None, stderr=None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        lines, status = args.func(args, stdin)
    except UsageError as exc:
        print(f"lpbohr: error: {exc}", file=stderr)
        return 2
    except (DomainError, ValueError) as exc:
        print(f"lpbohr: {type(exc).__name__}: {exc}", file=stderr)
        return 1
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
