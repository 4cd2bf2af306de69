"""Command-line front end.

Exit codes: 0 success, 1 verification found violations, 2 usage or
precondition error, 3 I/O error. Table and CSV output use 10 significant
digits; JSON output carries full double precision.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

import numpy as np

from . import pseudo, shell, verify
from .series import MAX_ORDER, NormalizedFn

EXIT_OK = 0
EXIT_VIOLATIONS = 1
EXIT_USAGE = 2
EXIT_IO = 3

SEED_ENV = "GFTKIT_SEED"


class UsageError(Exception):
    pass


def fmt(x) -> str:
    """10 significant digits, locale independent."""
    if isinstance(x, complex):
        if x.imag == 0:
            return fmt(x.real)
        return f"{x.real:.10g}{x.imag:+.10g}j"
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return str(x)
    return f"{float(x):.10g}"


def _lambda(value: float) -> float:
    if not value >= 1:
        raise UsageError(f"invalid lambda {value!r}: the class requires λ ≥ 1")
    return value


def _table(headers, rows) -> str:
    cells = [[str(h) for h in headers]] + [[fmt(v) if not isinstance(v, str) else v for v in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(headers))]
    lines = ["  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells]
    return "\n".join(lines) + "\n"


def _csv(headers, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(headers)
    for r in rows:
        w.writerow([fmt(v) if not isinstance(v, str) else v for v in r])
    return buf.getvalue()


def _emit(text: str, out_path: str | None) -> None:
    if out_path is None:
        sys.stdout.write(text)
        return
    try:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise IOError(f"cannot write {out_path}: {exc}") from exc


def _render(args, headers, rows, payload) -> str:
    if args.output == "json":
        return json.dumps(payload, indent=2) + "\n"
    if args.output == "csv":
        return _csv(headers, rows)
    return _table(headers, rows)


BOUND_HEADERS = ["lambda", "a2_bound", "a2_simple", "a3_bound", "fs_h", "fs_bound"]


def _bound_row(b: pseudo.BoundSet) -> list:
    return [b.lam, b.a2_bound, b.a2_simple_bound, b.a3_bound, b.fs_h, b.fs_bound]


def cmd_bounds(args) -> int:
    b = pseudo.bound_set(_lambda(args.lam), args.mu)
    if args.output == "json":
        text = json.dumps(b.to_dict(), indent=2) + "\n"
    else:
        rows = [
            ["|a2| bound", b.a2_bound],
            ["|a2| simple bound", b.a2_simple_bound],
            ["|a3| bound", b.a3_bound],
            ["h(mu)", b.fs_h],
            ["FS threshold T", b.fs_threshold],
            ["FS bound", b.fs_bound],
        ]
        if args.output == "csv":
            text = _csv(BOUND_HEADERS, [_bound_row(b)])
        else:
            text = f"lambda = {fmt(b.lam)}, mu = {fmt(b.mu)}\n" + _table(["quantity", "value"], rows)
    _emit(text, args.out)
    return EXIT_OK


def lambda_grid(lo: float, hi: float, step: float) -> list[float]:
    if not (1 <= lo <= hi) or not step > 0:
        raise UsageError("need 1 ≤ lambda-min ≤ lambda-max and step > 0 (λ ≥ 1)")
    n = int(np.floor((hi - lo) / step + 1e-9))
    return [lo + k * step for k in range(n + 1)]


def cmd_bounds_table(args) -> int:
    grid = lambda_grid(args.lambda_min, args.lambda_max, args.step)
    sets = [pseudo.bound_set(lam, args.mu) for lam in grid]
    text = _render(args, BOUND_HEADERS, [_bound_row(b) for b in sets], [b.to_dict() for b in sets])
    _emit(text, args.out)
    return EXIT_OK


def cmd_fs(args) -> int:
    lam = _lambda(args.lam)
    payload = {
        "lambda": lam,
        "mu": args.mu,
        "fs_h": pseudo.fs_h(args.mu, lam),
        "fs_threshold": pseudo.fs_threshold(lam),
        "fs_bound": pseudo.fs_bound(args.mu, lam),
        "fs_envelope": pseudo.fs_envelope(args.mu, lam),
    }
    if args.c2 is not None or args.d2 is not None:
        c2 = complex(args.c2 or 0)
        d2 = complex(args.d2 or 0)
        if abs(c2) > 2 or abs(d2) > 2:
            raise UsageError("admissible tuples need |c2| ≤ 2 and |d2| ≤ 2")
        sol = pseudo.solve_coeffs(c2, d2, lam)
        val = pseudo.fs_functional(sol, args.mu)
        payload.update({"c2": c2, "d2": d2, "abs_functional": abs(val)})
    if args.output == "json":
        text = json.dumps({k: (v if not isinstance(v, complex) else [v.real, v.imag])
                           for k, v in payload.items()}, indent=2) + "\n"
    else:
        rows = [[k, v] for k, v in payload.items()]
        text = _render(args, ["quantity", "value"], rows, None)
    _emit(text, args.out)
    return EXIT_OK


def cmd_curve(args) -> int:
    if not 0 <= args.r <= 1:
        raise UsageError("radius must satisfy 0 ≤ r ≤ 1")
    if args.samples < 1:
        raise UsageError("samples must be positive")
    pts = shell.curve_samples(args.r, args.samples, args.exclusion)
    if args.output == "json":
        text = json.dumps([{"t": t, "x": x, "y": y} for t, x, y in pts]) + "\n"
    else:
        text = _csv(["t", "x", "y"], pts)
    _emit(text, args.out)
    return EXIT_OK


def cmd_fib(args) -> int:
    if not 0 <= args.n <= shell.FIB_MAX:
        raise UsageError(f"n must lie in [0, {shell.FIB_MAX}]")
    rows = [[k, str(shell.fib(k))] for k in range(args.n + 1)]
    text = _render(args, ["n", "u_n"], rows, [shell.fib(k) for k in range(args.n + 1)])
    _emit(text, args.out)
    return EXIT_OK


def cmd_ptilde(args) -> int:
    if not 0 <= args.order <= MAX_ORDER:
        raise UsageError(f"order must lie in [0, {MAX_ORDER}]")
    law = shell.ptilde_series(args.order).coeffs.real
    quot = shell.ptilde_quotient_series(args.order).coeffs.real
    lucas = [1] + [shell.fib(n - 1) + shell.fib(n + 1) for n in range(1, args.order + 1)]
    rows = [[n, lucas[n], law[n], quot[n], abs(law[n] - quot[n])] for n in range(args.order + 1)]
    payload = [{"n": n, "lucas": lucas[n], "fibonacci_law": float(law[n]), "quotient": float(quot[n])}
               for n in range(args.order + 1)]
    text = _render(args, ["n", "lucas", "fibonacci_law", "quotient", "difference"], rows, payload)
    _emit(text, args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.suite not in verify.SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(verify.SUITES)}")
    reports = verify.run_suite(args.suite, seed=args.seed, samples=args.samples)
    total = sum(r.violations for r in reports)
    if len(reports) == 1:
        payload = reports[0].to_dict()
    else:
        payload = {"suite": args.suite, "seed": args.seed, "violations": total,
                   "reports": [r.to_dict() for r in reports]}
    _emit(json.dumps(payload, indent=2) + "\n", args.out)
    return EXIT_OK if total == 0 else EXIT_VIOLATIONS


def cmd_expand(args) -> int:
    lam = _lambda(args.lam)
    if args.order < 2:
        raise UsageError("order must be at least 2")
    a2, a3 = complex(args.a2), complex(args.a3)
    f = NormalizedFn.from_coeffs([a2, a3], args.order + 1)
    lhs = pseudo.lhs_series(f, lam, args.order)
    ghs = pseudo.ghs_series(f, lam, args.order)
    pl = pseudo.lhs_closed_form(a2, a3, lam)
    pg = pseudo.ghs_closed_form(a2, a3, lam)
    rows = []
    for k in range(args.order + 1):
        pred_l = {0: 1, 1: pl[0], 2: pl[1]}.get(k)
        pred_g = {0: 1, 1: pg[0], 2: pg[1]}.get(k)
        rows.append([
            k, lhs[k], "" if pred_l is None else pred_l,
            "" if pred_l is None else abs(lhs[k] - pred_l),
            ghs[k], "" if pred_g is None else pred_g,
            "" if pred_g is None else abs(ghs[k] - pred_g),
        ])
    headers = ["k", "z_side", "z_pred", "z_diff", "w_side", "w_pred", "w_diff"]
    if args.output == "json":
        def cx(v):
            return None if v == "" else [complex(v).real, complex(v).imag]
        payload = [dict(zip(headers, [r[0]] + [cx(v) for v in r[1:]])) for r in rows]
        text = json.dumps(payload, indent=2) + "\n"
    else:
        text = _render(args, headers, rows, None)
    _emit(text, args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", choices=("table", "json", "csv"), default="table")
    common.add_argument("--out", default=None, help="write to this file instead of stdout")
    common.add_argument("--seed", type=int, default=0)

    parser = argparse.ArgumentParser(
        prog="gftkit",
        description="Coefficient bounds for lambda-pseudo bi-starlike functions tied to the shell-like curve.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bounds", parents=[common], help="|a2|, |a3| and Fekete-Szego bounds")
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--mu", type=float, default=1.0)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("bounds-table", parents=[common], help="bounds on a lambda grid")
    p.add_argument("--lambda-min", type=float, default=1.0)
    p.add_argument("--lambda-max", type=float, default=3.0)
    p.add_argument("--step", type=float, default=0.5)
    p.add_argument("--mu", type=float, default=1.0)
    p.set_defaults(func=cmd_bounds_table)

    p = sub.add_parser("fs", parents=[common], help="Fekete-Szego constants, optionally at a tuple")
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--mu", type=float, required=True)
    p.add_argument("--c2", type=complex, default=None)
    p.add_argument("--d2", type=complex, default=None)
    p.set_defaults(func=cmd_fs)

    p = sub.add_parser("curve", parents=[common], help="samples of p(r e^{it}) as t,x,y")
    p.add_argument("--r", type=float, default=1.0)
    p.add_argument("--samples", type=int, default=360)
    p.add_argument("--exclusion", type=float, default=0.1)
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("fib", parents=[common], help="Fibonacci numbers u_0..u_n")
    p.add_argument("--n", type=int, default=20)
    p.set_defaults(func=cmd_fib)

    p = sub.add_parser("ptilde", parents=[common], help="Taylor coefficients of p, two ways")
    p.add_argument("--order", type=int, default=10)
    p.set_defaults(func=cmd_ptilde)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("--suite", default="all")
    p.add_argument("--samples", type=int, default=verify.DEFAULT_SAMPLES)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("expand", parents=[common], help="series of z f'^lam/f and w g'^lam/g")
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--a2", type=complex, default=0j)
    p.add_argument("--a3", type=complex, default=0j)
    p.add_argument("--order", type=int, default=4)
    p.set_defaults(func=cmd_expand)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    env_seed = os.environ.get(SEED_ENV)
    if env_seed is not None:
        try:
            args.seed = int(env_seed)
        except ValueError:
            print(f"gftkit: {SEED_ENV} must be an integer", file=sys.stderr)
            return EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, pseudo.LambdaRangeError) as exc:
        print(f"gftkit: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, IOError) as exc:
        print(f"gftkit: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
