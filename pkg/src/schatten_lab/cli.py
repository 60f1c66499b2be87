"""Command-line front end.

Exit codes: 0 success, 1 violation or domain failure, 2 usage error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import sys

from . import explorer
from .config import DEFAULT_TOL, RunConfig, Tolerances
from .errors import DomainError, InadmissibleTargetError
from .linalg_core import (
    calibrate_constant,
    closed_form_constant,
    representation_branch,
    scalar_power_integral,
    scheme_for_exponent,
)
from .reports import summarize
from .serialize import csv_text, dumps
from .suites import SUITES, run_suite
from .svg import line_chart

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3
LIST_FLAGS = ("--s", "--p", "--dims", "--lamA", "--lamB", "--target")


class UsageError(Exception):
    pass


def _floats(text: str) -> tuple[float, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(float(v) for v in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from exc


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(v) for v in text.split(",") if v.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _pair(text: str) -> tuple[float, float]:
    v = _floats(text)
    if len(v) != 2:
        raise argparse.ArgumentTypeError(f"expected two numbers a,b, got {text!r}")
    return v


def _join_negative_values(argv):
    """Let ``--lamA -3,-5.5`` through argparse by rewriting it as ``--lamA=-3,-5.5``."""
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in LIST_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-") and argv[i + 1][1:2].isdigit():
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def _common(p, s_default=None):
    p.add_argument("--s", type=_floats, default=s_default, help="comma-separated exponents s")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--out", default=None, help="output path (stdout when omitted)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="schatten-lab", description="Numerical checks of Schatten-norm inequalities.")
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run a property suite")
    v.add_argument("--ineq", required=True, help=f"one of: {', '.join(SUITES)}")
    _common(v)
    v.add_argument("--p", type=_floats, default=None)
    v.add_argument("--dims", type=_ints, default=None)
    v.add_argument("--trials", type=int, default=100)
    v.add_argument("--tol-gap", type=float, default=DEFAULT_TOL.gap)
    v.add_argument("--threads", type=int, default=0)
    v.add_argument("--format", choices=("json",), default="json")

    s = sub.add_parser("sweep", help="rotation sweep of the reverse Hanner gap for 2x2 matrices")
    s.add_argument("--lamA", type=_pair, default=explorer.FIGURE1[0])
    s.add_argument("--lamB", type=_pair, default=explorer.FIGURE1[1])
    _common(s, s_default=(0.25, 0.5, 0.75))
    s.add_argument("--grid", type=int, default=721)
    s.add_argument("--format", choices=("json", "csv", "svg"), default="csv")

    c = sub.add_parser("construct", help="2x2 matrix B with prescribed spectrum and one eigenvalue of A+B")
    c.add_argument("--lamA", type=_pair, required=True)
    c.add_argument("--lamB", type=_pair, required=True)
    c.add_argument("--target", type=float, required=True)
    c.add_argument("--which", type=int, choices=(1, 2), default=1)
    c.add_argument("--out", default=None)
    c.add_argument("--format", choices=("json",), default="json")

    q = sub.add_parser("search", help="randomised counterexample search over 2x2 spectra")
    _common(q, s_default=(0.25, 0.5, 0.75, -0.5))
    q.add_argument("--trials", type=int, default=200)
    q.add_argument("--dims", type=_ints, default=(2,))
    q.add_argument("--grid", type=int, default=181)
    q.add_argument("--psd-only", action="store_true")
    q.add_argument("--threads", type=int, default=0)
    q.add_argument("--format", choices=("json",), default="json")

    k = sub.add_parser("calibrate", help="quadrature normalisation constants against closed forms")
    k.add_argument("--s", type=_floats, default=(0.5, 0.25, -0.5, -1.5, -2.5, -3.3, 1.5))
    k.add_argument("--out", default=None)
    k.add_argument("--format", choices=("json",), default="json")
    return parser


def _emit(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text)
        return
    try:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise IOError(str(exc)) from exc


def _config_dict(cfg: RunConfig) -> dict:
    # thread count and output path do not affect results
    d = cfg.to_dict()
    d.pop("threads", None)
    d.pop("out", None)
    return d


def cmd_verify(args) -> int:
    if args.ineq not in SUITES:
        raise UsageError(f"unknown --ineq {args.ineq!r}; choose from {', '.join(SUITES)}")
    kw = {}
    if args.s is not None:
        kw["s_list"] = args.s
    if args.p is not None:
        kw["p_list"] = args.p
    if args.dims is not None:
        kw["dims"] = args.dims
    try:
        cfg = RunConfig(
            seed=args.seed,
            trials=args.trials,
            tolerances=Tolerances(gap=args.tol_gap),
            threads=args.threads,
            **kw,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    reports = run_suite(args.ineq, cfg)
    summary = summarize(reports)
    doc = {
        "config": {"command": "verify", "ineq": args.ineq, **_config_dict(cfg)},
        "results": [r.to_dict() for r in reports],
        "summary": summary,
    }
    _emit(dumps(doc) + "\n", args.out)
    return EXIT_OK if summary["violations"] == 0 else EXIT_VIOLATION


def sweep_table(lamA, lamB, s_list, grid):
    records = {s: explorer.rotation_sweep(lamA, lamB, s, grid) for s in s_list}
    roots = {s: explorer.sign_changes(recs) for s, recs in records.items()}
    return records, roots


def cmd_sweep(args) -> int:
    if args.grid < 2:
        raise UsageError("--grid must be >= 2")
    s_list = tuple(args.s)
    records, roots = sweep_table(args.lamA, args.lamB, s_list, args.grid)
    if args.format == "csv":
        rows = [(r.t, r.s, r.gap) for s in s_list for r in records[s]]
        text = csv_text(("t", "s", "gap"), rows)
    elif args.format == "svg":
        series = {f"s = {s:g}": ([r.t for r in records[s]], [r.gap for r in records[s]]) for s in s_list}
        title = f"lamA = {args.lamA}, lamB = {args.lamB}"
        text = line_chart(series, xlabel="t", ylabel="gap", title=title)
    else:
        flat = [r for s in s_list for r in records[s]]
        finite = [r.gap for r in flat if not r.singular]
        doc = {
            "config": {"command": "sweep", "lamA": list(args.lamA), "lamB": list(args.lamB), "s_list": list(s_list), "grid": args.grid},
            "results": [r.to_dict() for r in flat],
            "summary": {
                "min_gap": min(finite) if finite else None,
                "violations": sum(explorer.is_violation(r.gap, r.s) for r in flat),
                "samples": len(flat),
                "sign_changes": {f"{s:g}": roots[s] for s in s_list},
            },
        }
        text = dumps(doc) + "\n"
    _emit(text, args.out)
    return EXIT_OK


def cmd_construct(args) -> int:
    config = {"command": "construct", "lamA": list(args.lamA), "lamB": list(args.lamB), "target": args.target, "which": args.which}
    try:
        spec = explorer.TwoByTwoSpec(args.lamA, args.lamB, args.target, args.which)
        result = explorer.construct_2x2(spec)
    except InadmissibleTargetError as exc:
        _emit(dumps({"config": config, "error": {"reason": "inadmissible-target", "message": str(exc)}}) + "\n", args.out)
        return EXIT_VIOLATION
    except DomainError as exc:
        _emit(dumps({"config": config, "error": {"reason": "domain", "message": str(exc)}}) + "\n", args.out)
        return EXIT_VIOLATION
    doc = {
        "config": config,
        "results": result.to_dict(),
        "summary": {"residual_B": result.residual_B, "residual_target": result.residual_target},
    }
    _emit(dumps(doc) + "\n", args.out)
    return EXIT_OK


def cmd_search(args) -> int:
    dim = args.dims[0] if args.dims else 2
    found = explorer.counterexample_search(
        s_list=args.s, dim=dim, trials=args.trials, seed=args.seed, grid=args.grid, psd_only=args.psd_only, threads=args.threads
    )
    doc = {
        "config": {
            "command": "search",
            "s_list": list(args.s),
            "dim": dim,
            "trials": args.trials,
            "seed": args.seed,
            "grid": args.grid,
            "psd_only": args.psd_only,
        },
        "results": [c.to_dict() for c in found],
        "summary": {"violations": len(found), "samples": args.trials * len(args.s)},
    }
    _emit(dumps(doc) + "\n", args.out)
    return EXIT_OK


def calibration_rows(s_list) -> list[dict]:
    rows = []
    for s in s_list:
        branch = representation_branch(s)
        q = scheme_for_exponent(s)
        c = calibrate_constant(s, q)
        exact = closed_form_constant(s)
        x = 2.0
        approx = scalar_power_integral(x, s, q)
        row = {
            "s": s,
            "branch": branch,
            "c_s": c,
            "closed_form": exact,
            "constant_error": abs(c - exact) / exact,
            "quadrature_error": abs(approx - x**s) / x**s,
            "nodes": q.n_nodes,
            "power": q.power,
        }
        if branch == "deep" and not float(s).is_integer():
            row["literal_kernel_value_at_2"] = scalar_power_integral(x, s, variant="literal")
            row["literal_kernel_error"] = abs(row["literal_kernel_value_at_2"] - x**s) / x**s
        rows.append(row)
    return rows


def cmd_calibrate(args) -> int:
    rows = calibration_rows(args.s)
    worst = max((r["constant_error"] for r in rows), default=0.0)
    doc = {
        "config": {"command": "calibrate", "s_list": list(args.s)},
        "results": rows,
        "summary": {"max_constant_error": worst, "samples": len(rows)},
    }
    _emit(dumps(doc) + "\n", args.out)
    return EXIT_OK if all(r["quadrature_error"] <= DEFAULT_TOL.quad for r in rows) else EXIT_VIOLATION


COMMANDS = {
    "verify": cmd_verify,
    "sweep": cmd_sweep,
    "construct": cmd_construct,
    "search": cmd_search,
    "calibrate": cmd_calibrate,
}


def main(argv=None) -> int:
    argv = _join_negative_values(list(sys.argv[1:] if argv is None else argv))
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (IOError, OSError) as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_VIOLATION


if __name__ == "__main__":
    sys.exit(main())
