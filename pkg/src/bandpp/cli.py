"""Command-line front end: ``bandpp <command> [options]``.

Exit codes: 0 ok, 1 selftest failure, 2 invalid arguments, 3 solver
non-convergence, 4 oracle mismatch.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
from dataclasses import asdict, dataclass
from decimal import Decimal

import mpmath

from . import __version__
from .counting import FAMILY_TAGS, Family, euler_transform_counts, series_product_counts
from .errors import BandppError, BracketFailure, ConvergenceError, DomainError, NoConvergence
from .identity import identity_residual
from .precision import PrecisionContext, at
from .saddle import (
    bessel_estimate,
    critical_estimate,
    phase_classify,
    subcritical_estimate,
    supercritical_estimate,
    uniform_estimate,
    solve_saddle,
)
from .special import spot_values
from .transition import CURVES, solve_r

SCHEMA_VERSION = 1
CSV_DIGITS = 12
EXACT_BUDGET = 10_000

EXIT_OK, EXIT_SELFTEST, EXIT_USAGE, EXIT_CONVERGENCE, EXIT_ORACLE = 0, 1, 2, 3, 4

APPROX_METHODS = ("auto", "uniform", "uniform1", "uniform2", "subcritical", "bessel", "critical", "supercritical")
CURVE_COLUMNS = {"bpp": "G_alpha", "m_rowed": "H_alpha", "strict_rows": "strict_rows_value", "bounded_sym": "bounded_sym_value"}


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class CliConfig:
    precision_digits: int = 50
    brute_force_ceiling: int = 16
    output_format: str = "csv"
    omega_policy: str = "loglog"


def fmt(x, digits: int = CSV_DIGITS) -> str:
    """Round half-even to ``digits`` significant digits."""
    if x is None:
        return ""
    x = mpmath.mpmathify(x)
    if not mpmath.isfinite(x):
        return str(x)
    d = Decimal(mpmath.nstr(x, digits + 15, strip_zeros=False, min_fixed=-mpmath.inf, max_fixed=mpmath.inf))
    return format(d, f".{digits}g") if d else "0"


def parse_grid(text: str, integer: bool = False) -> list:
    """``start:stop:step`` (inclusive stop) or a comma-separated list."""
    try:
        if ":" in text:
            parts = text.split(":")
            if len(parts) != 3:
                raise ValueError
            if integer:
                a, b, s = (int(p) for p in parts)
                if s <= 0:
                    raise ValueError
                return list(range(a, b + 1, s))
            a, b, s = (mpmath.mpf(p) for p in parts)
            if s <= 0:
                raise ValueError
            count = int(mpmath.floor((b - a) / s + mpmath.mpf("1e-9"))) + 1
            return [a + i * s for i in range(max(count, 0))]
        vals = [p.strip() for p in text.split(",") if p.strip()]
        return [int(v) for v in vals] if integer else [mpmath.mpf(v) for v in vals]
    except ValueError:
        raise UsageError(f"cannot parse grid {text!r}") from None


_COMPLEX_RE = re.compile(r"^([+-]?[0-9.]+(?:e[+-]?\d+)?)?(?:([+-])([0-9.]*(?:e[+-]?\d+)?)[ij])?$", re.I)


def parse_complex(text: str):
    """Parse ``0.4``, ``0.4+0.2i`` or ``0.3-0.2j`` exactly in decimal."""
    t = text.strip().replace(" ", "")
    mt = _COMPLEX_RE.match(t)
    if not t or mt is None or (mt.group(1) is None and mt.group(2) is None):
        raise UsageError(f"cannot parse tau {text!r}")
    re_part = mpmath.mpf(mt.group(1)) if mt.group(1) else mpmath.mpf(0)
    if mt.group(2) is None:
        return re_part
    im = mpmath.mpf(mt.group(3) or 1)
    return mpmath.mpc(re_part, im if mt.group(2) == "+" else -im)


def envelope(command: str, config: dict, rows: list) -> str:
    return json.dumps({"schema_version": SCHEMA_VERSION, "command": command, "config": config, "rows": rows}, indent=2)


def write_table(rows: list[dict], columns: list[str], as_json: bool, command: str, config: dict, out) -> None:
    if as_json:
        out.write(envelope(command, config, [{c: r.get(c, "") for c in columns} for r in rows]) + "\n")
        return
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n", extrasaction="ignore")
    w.writeheader()
    for r in rows:
        w.writerow(r)
    out.write(buf.getvalue())


def _family(args) -> Family:
    if args.family not in FAMILY_TAGS:
        raise UsageError(f"unknown family {args.family!r}")
    try:
        return Family(args.family, args.m)
    except (ValueError, TypeError) as exc:
        raise UsageError(str(exc)) from None


def _parse_m(text: str, n: int) -> int:
    if text == "full":
        return n
    try:
        m = int(text)
    except ValueError:
        raise UsageError(f"invalid m {text!r}") from None
    if m < 1:
        raise UsageError("m must be >= 1")
    return m


# ---------------------------------------------------------------------------
# commands


def cmd_count(args, ctx: PrecisionContext, out) -> int:
    fam = _family(args)
    if args.n is not None:
        if args.n < 0:
            raise UsageError("n must be >= 0")
        ns = [args.n]
    elif args.n_range is not None:
        ns = parse_grid(args.n_range if args.n_range.count(":") == 2 else args.n_range + ":1", integer=True)
    else:
        raise UsageError("give --n or --n-range")
    if not ns or min(ns) < 0:
        raise UsageError("empty or negative n range")
    n_max = max(ns)
    if n_max > args.budget and not args.allow_large:
        raise UsageError(f"n = {n_max} exceeds the exact-count budget {args.budget}; pass --allow-large")
    table = euler_transform_counts(fam, n_max)
    if args.oracle:
        other = series_product_counts(fam, n_max)
        for k in range(n_max + 1):
            if table[k] != other[k]:
                print(f"oracle mismatch at n={k}: {table[k]} != {other[k]}", file=sys.stderr)
                return EXIT_ORACLE
    if args.json:
        rows = [{"n": k, "count": str(table[k])} for k in ns]
        out.write(envelope("count", {"family": fam.tag, "m": fam.m}, rows) + "\n")
    else:
        for k in ns:
            out.write(f"{k}\t{table[k]}\n")
    return EXIT_OK


def _auto_method(n: int, m: int) -> str:
    if m < 3:
        return "uniform"
    if n < 3:
        return "uniform"
    return {"subcritical": "bessel", "critical": "critical", "supercritical": "supercritical"}[phase_classify(n, m)["phase"]]


def run_method(method: str, n: int, m: int, ctx: PrecisionContext, sol=None):
    if method in ("uniform", "uniform1", "uniform2", "uniform_gamma1", "uniform_gamma2"):
        order = {"uniform": 0, "uniform1": 1, "uniform_gamma1": 1, "uniform2": 2, "uniform_gamma2": 2}[method]
        return uniform_estimate(n, m, order, ctx, sol)
    if method == "subcritical":
        return subcritical_estimate(n, m, ctx)
    if method == "bessel":
        return bessel_estimate(n, m, ctx)
    if method == "critical":
        return critical_estimate(n, m, ctx)
    if method == "supercritical":
        return supercritical_estimate(n, ctx)
    raise UsageError(f"unknown method {method!r}")


def cmd_approx(args, ctx: PrecisionContext, out) -> int:
    if args.n < 1:
        raise UsageError("n must be >= 1")
    n = args.n
    m = _parse_m(args.m, n)
    method = _auto_method(n, m) if args.method == "auto" else args.method
    if method in ("subcritical", "bessel", "critical") and m < 3:
        raise UsageError(f"method {method} needs m >= 3")
    est = run_method(method, n, m, ctx)
    phase = phase_classify(n, m)["phase"] if n >= 3 else None
    row = {
        "n": n,
        "m": m,
        "phase": phase,
        "method": est.method,
        "log_value": fmt(est.log_value),
        "terms": {k: fmt(v) for k, v in est.terms.items()},
        "claimed_error_order": est.claimed_error_order,
    }
    if args.json:
        out.write(envelope("approx", {"precision": ctx.working_digits}, [row]) + "\n")
    else:
        for k, v in row.items():
            if k == "terms":
                for tk, tv in v.items():
                    out.write(f"  {tk}: {tv}\n")
            else:
                out.write(f"{k}: {v}\n")
    return EXIT_OK


COMPARE_COLUMNS = ["n", "m", "phase", "exact_log", "method", "est_log", "rel_err"]


def cmd_compare(args, ctx: PrecisionContext, out) -> int:
    ns = parse_grid(args.n_grid, integer=True)
    if not ns or min(ns) < 1:
        raise UsageError("empty or invalid n grid")
    n_max = max(ns)
    if n_max > args.budget and not args.allow_large:
        raise UsageError(f"n = {n_max} exceeds the exact-count budget {args.budget}; pass --allow-large")
    methods = [s.strip() for s in args.methods.split(",") if s.strip()]
    for meth in methods:
        if meth not in APPROX_METHODS or meth == "auto":
            raise UsageError(f"unknown method {meth!r}")
    full = args.m == "full"
    rows = []
    tables = {}
    with at(ctx):
        for n in ns:
            m = _parse_m(args.m, n)
            key = n if full else m
            if key not in tables:
                tables[key] = euler_transform_counts(Family.bpp(m), n if full else n_max)
            exact_log = mpmath.log(tables[key][n])
            phase = phase_classify(n, m)["phase"] if n >= 3 else ""
            sol = solve_saddle(n, m, ctx) if any(x.startswith("uniform") for x in methods) else None
            for meth in methods:
                if meth in ("subcritical", "bessel", "critical") and m < 3:
                    continue
                est = run_method(meth, n, m, ctx, sol)
                rows.append(
                    {
                        "n": n,
                        "m": m,
                        "phase": phase,
                        "exact_log": fmt(exact_log),
                        "method": meth,
                        "est_log": fmt(est.log_value),
                        "rel_err": fmt(mpmath.expm1(est.log_value - exact_log)),
                    }
                )
    write_table(rows, COMPARE_COLUMNS, args.json, "compare", {"m": args.m, "n_grid": args.n_grid, "methods": methods}, out)
    return EXIT_OK


PHASE_COLUMNS = ["alpha", "r", "G_alpha", "H_alpha", "strict_rows_value", "bounded_sym_value", "note"]


def cmd_phase_curve(args, ctx: PrecisionContext, out) -> int:
    alphas = parse_grid(args.alpha_grid)
    if not alphas or min(alphas) <= 0:
        raise UsageError("alpha grid must be non-empty and positive")
    curves = [s.strip() for s in args.curves.split(",") if s.strip()]
    for cv in curves:
        if cv not in CURVES:
            raise UsageError(f"unknown curve {cv!r}")
    status = EXIT_OK
    rows = []
    prev = {}
    for a in alphas:
        row = {"alpha": fmt(a), "note": ""}
        for cv in curves:
            try:
                tp = solve_r(a, cv, ctx, guess=prev.get(cv))
                prev[cv] = tp.r
            except (BracketFailure, NoConvergence) as exc:
                prev.pop(cv, None)
                row["note"] = (row["note"] + f"{cv}: {exc}; ").strip()
                status = EXIT_CONVERGENCE
                continue
            row[CURVE_COLUMNS[cv]] = fmt(tp.value)
            if cv == "bpp" or (not row.get("r") and cv == curves[0]):
                row["r"] = fmt(tp.r)
        rows.append(row)
    write_table(rows, PHASE_COLUMNS, args.json, "phase-curve", {"curves": curves, "alpha_grid": args.alpha_grid}, out)
    return status


def cmd_identity_check(args, ctx: PrecisionContext, out) -> int:
    ms = parse_grid(args.m, integer=True)
    if not ms or min(ms) < 3:
        raise UsageError("identity-check needs m >= 3")
    if args.grid:
        taus = [parse_complex(t) for t in args.grid.split(",") if t.strip()]
    elif args.tau:
        taus = [parse_complex(args.tau)]
    else:
        raise UsageError("give --tau or --grid")
    for t in taus:
        if mpmath.re(t) <= 0:
            raise UsageError("need Re tau > 0")
    threshold = mpmath.mpf(10) ** -(ctx.working_digits - 12)
    rows = []
    worst = mpmath.mpf(0)
    for m in ms:
        for t in taus:
            rep = identity_residual(m, t, ctx)
            worst = max(worst, rep.rel_residual)
            d = rep.as_dict()
            d["pass"] = bool(rep.rel_residual < threshold)
            rows.append(d)
    config = {"precision": ctx.working_digits, "threshold": mpmath.nstr(threshold, 3)}
    if args.grid and not args.json:
        csv_rows = [{"m": r["m"], "re_tau": r["re_tau"], "im_tau": r["im_tau"], "residual": r["rel_residual"]} for r in rows]
        write_table(csv_rows, ["m", "re_tau", "im_tau", "residual"], False, "identity-check", config, out)
    else:
        out.write(envelope("identity-check", config, rows) + "\n")
    return EXIT_OK if worst < threshold else EXIT_ORACLE


def selftest_battery(ctx: PrecisionContext) -> list[tuple[str, bool, str]]:
    """Fast invariant checks; each entry is (name, passed, detail)."""
    from .counting import brute_force_bpp, count
    from .saddle import lambda_stirling
    from .special import xi

    results = []

    def check(name, fn):
        try:
            ok, detail = fn()
        except BandppError as exc:
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        results.append((name, bool(ok), detail))

    def counting():
        bad = [(n, m) for m in range(1, 6) for n in range(9) if brute_force_bpp(n, m) != count(Family.bpp(m), n)]
        return not bad, f"mismatches {bad}"

    def identity():
        rep = identity_residual(5, mpmath.mpc("0.4", "0.2"), ctx)
        return rep.rel_residual < mpmath.mpf(10) ** -(ctx.working_digits - 12), mpmath.nstr(rep.rel_residual, 3)

    def xi_ids():
        worst = max(
            abs(xi(d, z, "series", ctx) / xi(d, z, "closed", ctx) - 1) for d in (0, 1, 2) for z in (mpmath.mpf("0.5"), 2)
        )
        return worst < mpmath.mpf(10) ** -(ctx.working_digits - 8), mpmath.nstr(worst, 3)

    def ladder():
        with at(ctx):
            rho = mpmath.mpf("0.2")
            from .saddle import lambda_ladder

            lam = lambda_ladder(1, 4, rho, 3, ctx)
            worst = max(abs(lam[k - 1] / lambda_stirling(4, rho, k, ctx) - 1) for k in (1, 2, 3))
        return worst < mpmath.mpf(10) ** -(ctx.working_digits - 12), mpmath.nstr(worst, 3)

    def curves():
        g = solve_r(50, "bpp", ctx).value
        h = solve_r(50, "m_rowed", ctx).value
        return abs(g - mpmath.mpf("1.594895")) < 1e-4 and abs(h - mpmath.mpf("2.00944")) < 1e-3, f"G={mpmath.nstr(g, 8)} H={mpmath.nstr(h, 8)}"

    def saddle():
        sol = solve_saddle(300, 4, ctx)
        return sol.residual < mpmath.mpf(10) ** -(ctx.working_digits - 15) and sol.lam[1] > 0, mpmath.nstr(sol.residual, 3)

    for name, fn in (
        ("counting_triple_oracle", counting),
        ("identity_residual", identity),
        ("xi_identities", xi_ids),
        ("lambda_dual_route", ladder),
        ("transition_limits", curves),
        ("saddle_residual", saddle),
    ):
        check(name, fn)
    return results


def cmd_selftest(args, ctx: PrecisionContext, out) -> int:
    if args.dump_constants:
        vals = spot_values(ctx)
        rows = [{"name": k, "value": mpmath.nstr(v, ctx.working_digits), "digits": ctx.working_digits} for k, v in vals.items()]
        out.write(json.dumps(rows, indent=2) + "\n")
        return EXIT_OK
    results = selftest_battery(ctx)
    for name, ok, detail in results:
        out.write(f"{'PASS' if ok else 'FAIL'} {name} ({detail})\n")
    return EXIT_OK if all(ok for _, ok, _ in results) else EXIT_SELFTEST


# ---------------------------------------------------------------------------
# parser


def _default_precision() -> int:
    raw = os.environ.get("PPA_PRECISION")
    if raw is None:
        return CliConfig.precision_digits
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"PPA_PRECISION must be an integer, got {raw!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision", type=int, default=None, help="working decimal digits (default 50 or $PPA_PRECISION)")
    common.add_argument("--json", action="store_true", help="emit a JSON envelope instead of CSV/text")

    p = argparse.ArgumentParser(prog="bandpp", description="Banded plane partitions: exact counts and asymptotics.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("count", parents=[common], help="exact counts")
    c.add_argument("--family", required=True, choices=FAMILY_TAGS)
    c.add_argument("--m", type=int, default=None)
    g = c.add_mutually_exclusive_group()
    g.add_argument("--n", type=int)
    g.add_argument("--n-range", help="start:stop[:step], inclusive")
    c.add_argument("--oracle", action="store_true", help="recompute by series product and compare")
    c.add_argument("--budget", type=int, default=EXACT_BUDGET)
    c.add_argument("--allow-large", action="store_true")
    c.set_defaults(func=cmd_count)

    a = sub.add_parser("approx", parents=[common], help="asymptotic estimate of G_{n,m}")
    a.add_argument("--n", type=int, required=True)
    a.add_argument("--m", required=True, help="width, or 'full' for m = n")
    a.add_argument("--method", choices=APPROX_METHODS, default="auto")
    a.set_defaults(func=cmd_approx)

    cp = sub.add_parser("compare", parents=[common], help="exact vs asymptotic table")
    cp.add_argument("--m", required=True, help="width, or 'full' for m = n")
    cp.add_argument("--n-grid", required=True, help="start:stop:step, inclusive")
    cp.add_argument("--methods", default="uniform", help="comma-separated estimate methods")
    cp.add_argument("--budget", type=int, default=EXACT_BUDGET)
    cp.add_argument("--allow-large", action="store_true")
    cp.set_defaults(func=cmd_compare)

    pc = sub.add_parser("phase-curve", parents=[common], help="transition curves on an alpha grid")
    pc.add_argument("--alpha-grid", required=True, help="start:stop:step or comma list")
    pc.add_argument("--curves", default=",".join(CURVES))
    pc.set_defaults(func=cmd_phase_curve)

    ic = sub.add_parser("identity-check", parents=[common], help="series vs exact identity for log G_m")
    ic.add_argument("--m", required=True, help="width or comma list")
    ic.add_argument("--tau", help="e.g. 0.4+0.2i")
    ic.add_argument("--grid", help="comma-separated tau values")
    ic.set_defaults(func=cmd_identity_check)

    st = sub.add_parser("selftest", parents=[common], help="run the invariant battery")
    st.add_argument("--dump-constants", action="store_true", help="print spot values as JSON and exit")
    st.set_defaults(func=cmd_selftest)
    return p


def main(argv: list[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        digits = args.precision if args.precision is not None else _default_precision()
        if digits < 15:
            raise UsageError("precision must be >= 15 digits")
        ctx = PrecisionContext(digits)
        with at(ctx):
            return args.func(args, ctx, out)
    except (UsageError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NoConvergence, BracketFailure, ConvergenceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE


if __name__ == "__main__":
    sys.exit(main())
