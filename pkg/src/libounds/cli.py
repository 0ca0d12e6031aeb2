"""Command-line entry point: ``libounds <command> [options]``.

Exit status is 0 when a command succeeds or certifies, 1 when a check fails
or the walk meets a counterexample candidate, 2 on usage or domain errors.
"""

from __future__ import annotations

import argparse
import sys
import time
from decimal import Decimal
from typing import Sequence

from .conjecture import CounterexampleError, WALK_BITS, run_walk, scan_conjectures, write_walk_report
from .errors import LiboundsError
from .kappa import constants, solve_kappa
from .li import evaluate_row
from .precision import context_from_env, decimal_string
from .primes import SieveConfig, DEFAULT_LIMIT, DEFAULT_SEGMENT
from .tables import TableSpec, compute_table, figure1_data, render_table
from . import verify as V

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
STIRLING_KAPPAS = ("0.1", "0.18668231", "0.5", "1", "2.155535203", "e")


def _int_like(text: str) -> int:
    # Accepts 1000000, 1e6, 2.09e9, 1_000_000.
    text = text.replace("_", "")
    try:
        return int(text)
    except ValueError:
        value = float(text)
        if value != int(value):
            raise argparse.ArgumentTypeError(f"expected an integer, got {text}")
        return int(value)


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--precision-bits", type=int, default=None,
                   help="mantissa bits (default 192, or LIBOUNDS_PRECISION_BITS)")
    p.add_argument("--digits", type=int, default=30, help="significant digits in printed reals")


def _grid_opts(p: argparse.ArgumentParser) -> None:
    p.add_argument("--x-max", default="1e12")
    p.add_argument("--points", type=int, default=10_000, help="log-spaced grid points")
    p.add_argument("--per-boundary", type=int, default=200, help="points clustered at each floor boundary")
    p.add_argument("--omega", action="append", default=None,
                   help="omega value (repeatable; default 0.1 0.3 0.5 0.7 0.9 or 0.5 where one is used)")
    p.add_argument("--output", default="-", help="certificate file (default stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="libounds", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("kappa", help="both roots of k(1 - log k) = omega and the bound constants")
    p.add_argument("--omega", default="0.5")
    _common(p)

    p = sub.add_parser("eval", help="every approximation, error and ratio at one x")
    p.add_argument("x")
    p.add_argument("--omega", default="0.5")
    _common(p)

    p = sub.add_parser("table", help="reproduce Table 1, 2 or 3")
    p.add_argument("table_id", type=int, choices=(1, 2, 3))
    p.add_argument("--k-min", type=int, default=1)
    p.add_argument("--k-max", type=int, default=29)
    p.add_argument("--format", choices=("csv", "markdown"), default="csv")
    p.add_argument("--segment-size", type=_int_like, default=DEFAULT_SEGMENT)
    _common(p)

    p = sub.add_parser("verify", help="run a certificate suite")
    p.add_argument("suite", choices=("stirling", "aux", "error-bounds", "ordering", "stieltjes", "sandwich"))
    p.add_argument("--kappa", action="append", default=None,
                   help="kappa for the stirling suite (repeatable; 'e' allowed)")
    p.add_argument("--n-max", type=int, default=500, help="largest n for the sum k!/n^k chain")
    p.add_argument("--pairs", type=int, default=1000, help="random (y, m) pairs per product-sum form")
    p.add_argument("--seed", type=int, default=0)
    _grid_opts(p)
    _common(p)

    p = sub.add_parser("walk", help="interval walk certifying li_lower <= pi")
    p.add_argument("--limit", type=_int_like, required=True)
    p.add_argument("--omega", default="0.5")
    p.add_argument("--checkpoint", default=None)
    p.add_argument("--segment-size", type=_int_like, default=DEFAULT_SEGMENT)
    p.add_argument("--report", default=None, help="write the full step list as JSON lines")
    _common(p)

    p = sub.add_parser("scan", help="check all four inequalities at every integer up to a limit")
    p.add_argument("--limit", type=_int_like, required=True)
    p.add_argument("--omega", default="0.5")
    p.add_argument("--segment-size", type=_int_like, default=DEFAULT_SEGMENT)
    _common(p)

    p = sub.add_parser("figure1", help="(kappa, kappa(1 - log kappa)) curve data")
    p.add_argument("--points", type=int, default=200)
    _common(p)
    return parser


def _fmt(v, digits: int) -> str:
    # positional notation for moderate magnitudes, scientific otherwise
    text = decimal_string(v, digits)
    d = Decimal(text)
    if d == 0 or -6 <= d.adjusted() < digits:
        return format(d, "f")
    return text


def cmd_kappa(args, out) -> int:
    ctx = context_from_env(args.precision_bits)
    sol = solve_kappa(args.omega, ctx)
    d = args.digits
    out.write(f"omega {_fmt(sol.omega, d)}\n")
    out.write(f"kappa_under {_fmt(sol.kappa_under, d)}\n")
    out.write(f"kappa_over {_fmt(sol.kappa_over, d)}\n")
    out.write(f"residual_under {_fmt(sol.residual_under, 6)}\n")
    out.write(f"residual_over {_fmt(sol.residual_over, 6)}\n")
    for name, value in constants(sol, ctx).as_dict().items():
        out.write(f"{name} {_fmt(value, d)}\n")
    return EXIT_OK


def cmd_eval(args, out) -> int:
    ctx = context_from_env(args.precision_bits)
    row = evaluate_row(args.x, args.omega, ctx)
    d = args.digits
    for name in ("x", "li", "li_star", "li0", "li_under", "li_over", "li1", "eps_star", "eps0_star",
                 "eps1_star", "eps_under_star", "eps_over_star", "ratio0", "ratio1", "ratio_under", "ratio_over"):
        out.write(f"{name} {_fmt(getattr(row, name), d)}\n")
    st = row.truncation
    out.write(f"n {st.n}\nm_under {st.m_under}\nm_over {st.m_over}\n")
    out.write(f"boundary {','.join(st.boundary) or 'none'}\n")
    return EXIT_OK


def cmd_table(args, out) -> int:
    bits = context_from_env(args.precision_bits).mantissa_bits
    spec = TableSpec(args.table_id, args.k_min, args.k_max, bits, args.format)
    cfg = SieveConfig(limit=DEFAULT_LIMIT, segment_size=args.segment_size)
    out.write(render_table(spec, compute_table(spec, cfg)))
    return EXIT_OK


def _verify_reports(args, ctx):
    omegas = args.omega or list(V.DEFAULT_OMEGAS)
    grid_kw = dict(x_max=args.x_max, points=args.points, per_boundary=args.per_boundary)
    if args.suite == "stirling":
        for k in args.kappa or STIRLING_KAPPAS:
            kv = ctx.e if k == "e" else ctx.real(k)
            grid = V.stirling_grid(kv, ctx, args.x_max, args.points, args.per_boundary)
            yield V.check_stirling_upper(kv, grid, ctx)
            yield V.check_stirling_lower(kv, grid, ctx)
    elif args.suite == "aux":
        xs = V.log_grid(ctx.e, args.x_max, 200, ctx)
        alphas = ["0.01", "0.1", "0.18668231", "0.5", "1", "1.5", "2.155535203", "2.7"]
        yield V.check_aux_identities(xs, alphas, ctx)
        a_grid = [1, 2, 7, "0.5", "1.25", "2.999", "3.0001", "10.5", "123.456"]
        pairs = [(1, 1), (1, 2), (2, 3), (99, 100), (1, 1000)]
        yield V.check_floor_lemmas(a_grid, pairs, ctx)
        yield V.check_sum_factorial_power(args.n_max, ctx)
        ys, ms = V.random_product_sum_pairs(args.pairs, args.seed)
        yield V.check_product_sum_bounds(ys, ms, ctx)
    elif args.suite == "error-bounds":
        yield V.check_error_bounds(omegas, None, ctx, **grid_kw)
    elif args.suite == "sandwich":
        yield V.check_sandwich(omegas, None, ctx, **grid_kw)
    elif args.suite == "ordering":
        for w in args.omega or ["0.5"]:
            yield V.check_ordering(None, ctx, w, **grid_kw)
    elif args.suite == "stieltjes":
        yield V.check_stieltjes(None, ctx, **grid_kw)


def cmd_verify(args, out) -> int:
    ctx = context_from_env(args.precision_bits)
    fh = out if args.output == "-" else open(args.output, "w")
    ok = True
    try:
        for rep in _verify_reports(args, ctx):
            fh.write(rep.to_json() + "\n")
            fh.flush()
            status = "PASS" if rep.passed else "FAIL"
            margin = "n/a" if rep.margin_min is None else _fmt(rep.margin_min, 12)
            sys.stderr.write(f"{status} {rep.check_name}: {rep.points_tested} points, "
                             f"{len(rep.failures)} failures, min margin {margin}\n")
            for f in rep.failures[:5]:
                sys.stderr.write(f"  failure {f.record()}\n")
            ok = ok and rep.passed
    finally:
        if fh is not out:
            fh.close()
    return EXIT_OK if ok else EXIT_FAIL


def cmd_walk(args, out) -> int:
    ctx = context_from_env(args.precision_bits, default=WALK_BITS)
    cfg = SieveConfig(limit=max(DEFAULT_LIMIT, args.limit), segment_size=args.segment_size)
    started = time.perf_counter()
    try:
        rep = run_walk(args.limit, args.omega, cfg, ctx, args.checkpoint)
    except CounterexampleError as exc:
        out.write(f"counterexample candidate: x_i={exc.x_i} pi(x_i)={exc.pi_x_i} "
                  f"li_lower(x_i+1)={decimal_string(exc.value)}\n")
        return EXIT_FAIL
    elapsed = time.perf_counter() - started
    head = ", ".join(str(s.x_next) for s in rep.steps[:5])
    out.write(f"I {rep.I}\nx_final {rep.x_final}\nlimit_reached {str(rep.limit_reached).lower()}\n")
    out.write(f"first_steps {head}\nelapsed {elapsed:.2f}s\n")
    if args.report:
        with open(args.report, "w") as fh:
            write_walk_report(rep, fh)
    return EXIT_OK if rep.limit_reached else EXIT_FAIL


def cmd_scan(args, out) -> int:
    ctx = context_from_env(args.precision_bits)
    cfg = SieveConfig(limit=max(args.limit, 2), segment_size=args.segment_size)
    rep = scan_conjectures(args.limit, ctx, args.omega, cfg)
    out.write(rep.to_json() + "\n")
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_figure1(args, out) -> int:
    ctx = context_from_env(args.precision_bits)
    out.write("kappa,omega\n")
    for k, w in figure1_data(args.points, ctx):
        out.write(f"{_fmt(k, args.digits)},{_fmt(w, args.digits)}\n")
    return EXIT_OK


COMMANDS = {
    "kappa": cmd_kappa,
    "eval": cmd_eval,
    "table": cmd_table,
    "verify": cmd_verify,
    "walk": cmd_walk,
    "scan": cmd_scan,
    "figure1": cmd_figure1,
}


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args, out)
    except (LiboundsError, ValueError) as exc:
        sys.stderr.write(f"libounds {args.command}: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
