"""Command-line entry point: ``nrs2bench <command> ...``.

Exit codes: 0 all checks pass, 1 a verification failure, 2 a usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import recurrences as R
from . import trees as T
from .algebra import format_rational
from .nrs2 import CubicInput, InputError, errfrac_check
from .suites import SUITES, Params, run_verify

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
DEFAULT_TREE_LIMIT = 1_000_000


class UsageError(Exception):
    pass


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def _rationals(text: str) -> tuple[Fraction, ...]:
    try:
        vals = tuple(Fraction(x.strip()) for x in text.split(","))
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a list of rationals: {text!r}")
    if len(vals) != 3:
        raise argparse.ArgumentTypeError("expected three comma-separated values")
    return vals


def _write(text: str, emit: str | None):
    if emit:
        with open(emit, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_verify(args) -> int:
    p = Params(args.max_n, args.grid_bound, args.seed, args.deep, args.timing)
    only = tuple(args.suite) if args.suite else None
    report = run_verify(p, only)
    _write(report.render(args.format), args.emit)
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_coeffs(args) -> int:
    fmt = "csv" if args.csv else args.format
    ct = T.coeff_table(args.n)
    rows = ct.folded if args.folded else ct.rows
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "2k", "c_2k"])
        for k, c in rows:
            w.writerow([args.n, k, c])
        out = buf.getvalue()
    elif fmt == "json":
        out = json.dumps(ct.to_dict(), indent=2) + "\n"
    else:
        lines = [f"{k} {c}" for k, c in rows]
        lines += [f"{'PASS' if v else 'FAIL'} {name}" for name, v in ct.checks.items()]
        out = "\n".join(lines) + "\n"
    _write(out, args.emit)
    return EXIT_OK if all(ct.checks.values()) else EXIT_FAIL


def cmd_trees(args) -> int:
    total = T.count_trees(args.n)
    if total > args.limit:
        raise UsageError(f"RV_{{{args.n};2}} has {total} trees, above --limit {args.limit}")
    if args.emit:
        with open(args.emit, "w", encoding="utf-8") as fh:
            for t in T.enumerate_trees(args.n):
                fh.write(f"{t}\n")
    else:
        out = sys.stdout
        for t in T.enumerate_trees(args.n):
            out.write(f"{t}\n")
    return EXIT_OK


def cmd_nrs2(args) -> int:
    inp = CubicInput(*args.u)
    try:
        inp.check()
    except InputError as exc:
        raise UsageError(str(exc))
    try:
        rows = errfrac_check(args.steps, inp)
    except InputError as exc:
        raise UsageError(str(exc))
    fr = lambda x: None if x is None else format_rational(x)
    data = {
        "u": [format_rational(x) for x in inp.point],
        "a": [format_rational(x) for x in (inp.a0, inp.a1, inp.a2, inp.a3)],
        "steps": [
            {
                "n": r.n, "c0": fr(r.c0), "c1": fr(r.c1),
                "errfrac0": fr(r.frac0), "errfrac1": fr(r.frac1),
                "ok0": r.ok0, "ok1": r.ok1, **({"note": r.note} if r.note else {}),
            }
            for r in rows
        ],
    }
    if args.format == "json":
        out = json.dumps(data, indent=2) + "\n"
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "c0", "c1", "errfrac0", "errfrac1", "ok0", "ok1", "note"])
        for s in data["steps"]:
            w.writerow([s["n"], s["c0"], s["c1"], s["errfrac0"], s["errfrac1"], s["ok0"], s["ok1"], s.get("note", "")])
        out = buf.getvalue()
    else:
        out = "".join(
            f"n={s['n']} c0={s['c0']} c1={s['c1']} ok0={s['ok0']} ok1={s['ok1']}"
            + (f" ({s['note']})" if "note" in s else "") + "\n"
            for s in data["steps"]
        )
    _write(out, args.emit)
    return EXIT_OK if all(r.ok for r in rows) else EXIT_FAIL


def cmd_pipeline(args) -> int:
    levels = R.orr_to_mrr_diagnostic(args.max_n)
    _write(json.dumps([lv.to_dict() for lv in levels], indent=2) + "\n", args.emit)
    return EXIT_OK if all(lv.matches for lv in levels) else EXIT_FAIL


def cmd_err0(args) -> int:
    _write(R.err0_csv(R.mlcr_orbit(args.n)), args.emit)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="nrs2bench", description="Exact verification workbench for NRS(2) on cubics.")
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run the verification suites")
    v.add_argument("--max-n", type=_nonneg, default=6)
    v.add_argument("--grid-bound", type=_nonneg, default=12)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--format", choices=("json", "csv", "text"), default="json")
    v.add_argument("--deep", action="store_true", help="stream all of RV_{3;2}")
    v.add_argument("--emit", metavar="FILE")
    v.add_argument("--timing", action="store_true", help="record wall time per check")
    v.add_argument("--suite", action="append", choices=SUITES, help="run only this suite (repeatable)")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("coeffs", help="coefficient table of E(n)")
    c.add_argument("--n", type=_nonneg, required=True)
    c.add_argument("--format", choices=("json", "csv", "text"), default="text")
    c.add_argument("--csv", action="store_true", help="same as --format csv")
    c.add_argument("--folded", action="store_true", help="print the L-image instead")
    c.add_argument("--emit", metavar="FILE")
    c.set_defaults(func=cmd_coeffs)

    t = sub.add_parser("trees", help="serialize RV_{n;2}")
    t.add_argument("--n", type=_nonneg, required=True)
    t.add_argument("--emit", metavar="FILE")
    t.add_argument("--limit", type=_nonneg, default=DEFAULT_TREE_LIMIT, help="refuse larger sets")
    t.set_defaults(func=cmd_trees)

    for name in ("nrs2", "nrs2-run"):
        r = sub.add_parser(name, help="run the iteration with error-fraction checks")
        r.add_argument("--u", type=_rationals, required=True, help="u1,u2,u3 as rationals")
        r.add_argument("--steps", type=_nonneg, default=4)
        r.add_argument("--format", choices=("json", "csv", "text"), default="json")
        r.add_argument("--emit", metavar="FILE")
        r.set_defaults(func=cmd_nrs2)

    pl = sub.add_parser("pipeline", help="original-to-modified change-of-variables diagnostic")
    pl.add_argument("--max-n", type=_nonneg, default=2)
    pl.add_argument("--emit", metavar="FILE")
    pl.set_defaults(func=cmd_pipeline)

    e = sub.add_parser("err0", help="CSV of the leading-coefficient polynomials")
    e.add_argument("--n", type=_nonneg, default=2)
    e.add_argument("--emit", metavar="FILE")
    e.set_defaults(func=cmd_err0)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"nrs2bench: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"nrs2bench: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
