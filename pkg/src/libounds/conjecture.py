"""Verification of li_lower(x) <= pi(x) <= li_upper(x) within sieve range.

Two independent routes:

* the interval walk: starting from x0 = 2, repeatedly jump to the largest
  integer n with li_lower(n) <= pi(x_i).  Since li_lower is increasing and pi
  is non-decreasing, every x in [e, x_{i+1}] then satisfies
  li_lower(x) <= pi(x).  Each step costs a logarithmic number of li_lower
  evaluations and one pi query.
* the direct scan: every integer in [3, limit] is checked against all four
  inequalities, screened in float64 and rechecked at working precision
  wherever the float margin is not decisively positive.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Iterable

import gmpy2
import numpy as np

from .errors import CapacityError, LiboundsError
from .kappa import KappaSolution, solve_kappa_cached
from .li import li_lower, li_upper
from .precision import PrecisionContext, decimal_string, make_context
from .primes import (
    CheckpointRecord,
    PrimeCounter,
    SieveConfig,
    append_checkpoint,
    read_checkpoint,
    segments,
)
from .verify import CheckReport, _Tally, boundary_cluster, log_grid

__all__ = [
    "WALK_BITS",
    "IntervalStep",
    "WalkReport",
    "CounterexampleError",
    "advance",
    "check_lower_monotone",
    "run_walk",
    "verify_steps",
    "write_walk_report",
    "read_walk_report",
    "scan_conjectures",
]

WALK_BITS = 128


@dataclass(frozen=True)
class IntervalStep:
    i: int
    x_i: int
    pi_x_i: int
    x_next: int


@dataclass(frozen=True)
class WalkReport:
    steps: tuple[IntervalStep, ...]
    I: int
    x_final: int
    limit: int
    limit_reached: bool
    elapsed: float = field(default=0.0, compare=False)


class CounterexampleError(LiboundsError):
    """The walk cannot advance: li_lower(x_i + 1) > pi(x_i)."""

    def __init__(self, x_i: int, pi_x_i: int, value):
        self.x_i = x_i
        self.pi_x_i = pi_x_i
        self.value = value
        super().__init__(
            f"walk cannot advance at x_i={x_i}: li_lower({x_i + 1}) = {decimal_string(value)} "
            f"> pi(x_i) = {pi_x_i}; potential counterexample"
        )


def _lower(sol: KappaSolution, ctx: PrecisionContext):
    def f(n: int):
        return li_lower(n, sol, "fractional", ctx)

    return f


def advance(x_i: int, pi_x_i: int, omega="0.5", ctx: PrecisionContext | None = None) -> int:
    """``max{n > x_i : li_lower(n) <= pi_x_i}`` by exponential then binary search."""
    ctx = ctx or make_context(WALK_BITS)
    if x_i < 2:
        raise ValueError(f"x_i must be >= 2, got {x_i}")
    sol = solve_kappa_cached(omega, ctx)
    f = _lower(sol, ctx)
    # li_lower is only defined from e on; x_i = 2 starts the search at 3.
    lo = x_i + 1
    first = f(lo)
    if first > pi_x_i:
        raise CounterexampleError(x_i, pi_x_i, first)
    step = 1
    while f(lo + step) <= pi_x_i:
        lo += step
        step *= 2
    hi = lo + step  # f(lo) <= pi < f(hi)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if f(mid) <= pi_x_i:
            lo = mid
        else:
            hi = mid
    return lo


def check_lower_monotone(limit: int, omega="0.5", ctx: PrecisionContext | None = None,
                         points: int = 4096, per_boundary: int = 16) -> CheckReport:
    """li_lower strictly increasing on a dense grid of ``[3, limit]``."""
    ctx = ctx or make_context(WALK_BITS)
    sol = solve_kappa_cached(omega, ctx)
    hi = max(limit, 4)
    pts = log_grid(3, hi, points, ctx)
    pts.extend(boundary_cluster(sol.kappa_under, 3, hi, per_boundary, ctx=ctx))
    pts.extend(boundary_cluster(1, 3, hi, per_boundary, ctx=ctx))
    with ctx.scope():
        pts = sorted(set(pts))
    tally = _Tally("lower_monotone", f"{len(pts)} pts on [3, {hi}] incl. floor clusters; omega={omega}; "
                                     f"{ctx.mantissa_bits} bits")
    prev_x = prev = None
    for x in pts:
        v = li_lower(x, sol, "fractional", ctx)
        tally.point((x,))
        if prev is not None:
            if not tally.le((prev_x, x, "li_lower increasing"), prev, v) or prev == v:
                if prev == v:
                    tally.fail((prev_x, x, "li_lower strictly increasing"), prev, v)
        prev_x, prev = x, v
    return tally.report()


def verify_steps(steps: Iterable[IntervalStep], omega="0.5", ctx: PrecisionContext | None = None) -> None:
    """Recheck ``li_lower(x_next) <= pi_x_i < li_lower(x_next + 1)`` for every step."""
    ctx = ctx or make_context()
    sol = solve_kappa_cached(omega, ctx)
    prev = None
    for st in steps:
        if st.x_next <= st.x_i or (prev is not None and (st.i != prev.i + 1 or st.x_i != prev.x_next)):
            raise LiboundsError(f"walk steps are not contiguous at i={st.i}")
        a = li_lower(st.x_next, sol, "fractional", ctx)
        b = li_lower(st.x_next + 1, sol, "fractional", ctx)
        if not (a <= st.pi_x_i < b):
            raise LiboundsError(
                f"step {st.i} fails the maximum property at {ctx.mantissa_bits} bits: "
                f"li_lower({st.x_next}) = {decimal_string(a, 30)}, pi = {st.pi_x_i}, "
                f"li_lower({st.x_next + 1}) = {decimal_string(b, 30)}"
            )
        prev = st


def run_walk(limit: int, omega="0.5", cfg: SieveConfig | None = None, ctx: PrecisionContext | None = None,
             checkpoint: str | Path | None = None, *, check_monotone: bool = True,
             verify_ctx: PrecisionContext | None = None) -> WalkReport:
    """Walk from x0 = 2 until ``x_{I+1} >= limit``.

    With ``checkpoint`` every (i, x_i, pi(x_i)) is appended as it becomes
    known, and an existing file is resumed from its last record.  Every step
    is rechecked at ``verify_ctx`` precision (default 192 bits) before the
    report is returned.
    """
    started = time.perf_counter()
    ctx = ctx or make_context(WALK_BITS)
    cfg = cfg or SieveConfig()
    if limit > cfg.limit:
        raise CapacityError(f"walk limit {limit} exceeds the sieve limit {cfg.limit}")
    if limit < 3:
        raise ValueError(f"walk limit must be >= 3, got {limit}")
    if check_monotone:
        mono = check_lower_monotone(limit, omega, ctx)
        if not mono.passed:
            raise LiboundsError(f"li_lower is not increasing on the pre-walk grid: {mono.failures[0].record()}")

    records = read_checkpoint(checkpoint) if checkpoint else []
    if records and (records[0].i, records[0].x, records[0].pi_x) != (0, 2, 1):
        raise LiboundsError("checkpoint must start with the record '0 2 1'")
    if not records:
        records = [CheckpointRecord(0, 2, 1)]
        fresh = True
    else:
        fresh = False
    steps = [IntervalStep(a.i, a.x, a.pi_x, b.x) for a, b in zip(records, records[1:])]
    last = records[-1]
    counter = PrimeCounter(cfg, start=last.x, pi_start=last.pi_x)
    x, pi_x, i = last.x, last.pi_x, last.i

    fh: IO[str] | None = None
    if checkpoint:
        fh = open(checkpoint, "a")
        if fresh:
            append_checkpoint(fh, records[0])
    try:
        while x < limit:
            nxt = advance(x, pi_x, omega, ctx)
            steps.append(IntervalStep(i, x, pi_x, nxt))
            i, x = i + 1, nxt
            if x < limit:
                pi_x = counter(x)
                if fh:
                    append_checkpoint(fh, CheckpointRecord(i, x, pi_x))
    finally:
        if fh:
            fh.close()

    verify_steps(steps, omega, verify_ctx or make_context())
    final = steps[-1]
    return WalkReport(
        steps=tuple(steps),
        I=final.i,
        x_final=final.x_next,
        limit=limit,
        limit_reached=final.x_next >= limit,
        elapsed=time.perf_counter() - started,
    )


def write_walk_report(report: WalkReport, fh) -> None:
    """One JSON record per step followed by a summary record."""
    for st in report.steps:
        fh.write(json.dumps({"i": st.i, "x_i": st.x_i, "pi_x_i": st.pi_x_i, "x_next": st.x_next}) + "\n")
    fh.write(json.dumps({
        "I": report.I,
        "x_final": report.x_final,
        "limit": report.limit,
        "limit_reached": report.limit_reached,
        "steps": len(report.steps),
    }) + "\n")


def read_walk_report(fh) -> WalkReport:
    steps, summary = [], None
    for line in fh:
        if not line.strip():
            continue
        rec = json.loads(line)
        if "x_next" in rec:
            steps.append(IntervalStep(rec["i"], rec["x_i"], rec["pi_x_i"], rec["x_next"]))
        else:
            summary = rec
    if summary is None:
        raise ValueError("walk report has no summary record")
    return WalkReport(tuple(steps), summary["I"], summary["x_final"], summary["limit"], summary["limit_reached"])


# --------------------------------------------------------------------------
# direct scan

def _float_families(n: np.ndarray, ku: float, ko: float):
    """float64 li0, li_under, li_over, li1 and floor distances at integer points."""
    L = np.log(n)
    yu, yo = ku * L, ko * L
    mu, mo = np.floor(yu), np.floor(yo)
    au, ao = yu - mu, yo - mo
    l0 = np.zeros_like(L)
    lu = np.zeros_like(L)
    lo = np.zeros_like(L)
    l1 = np.zeros_like(L)
    t = np.ones_like(L)
    top = int(mo.max()) if len(mo) else 0
    for k in range(top + 1):
        below_u, at_u = k < mu, k == mu
        below_o, at_o = k < mo, k == mo
        l0 += np.where(below_u, t, 0.0)
        lu += np.where(below_u, t, 0.0) + np.where(at_u, au * t, 0.0)
        lo += np.where(below_o, t, 0.0) + np.where(at_o, ao * t, 0.0)
        l1 += np.where(below_o | at_o, t, 0.0)
        t = t * (k + 1) / L
    scale = n / L
    dist = np.minimum(np.minimum(au, 1 - au), np.minimum(ao, 1 - ao))
    return scale * l0, scale * lu, scale * lo, scale * l1, dist


def scan_conjectures(limit: int, ctx: PrecisionContext | None = None, omega="0.5",
                     cfg: SieveConfig | None = None) -> CheckReport:
    """Check li0 <= pi, li_under <= pi, pi <= li_over, pi <= li1 at every integer in [3, limit].

    Points whose float64 margin is below ``2**-40`` relative, or whose
    truncation index sits within 1e-9 of a floor boundary, are re-evaluated
    at working precision; only those exact values decide a violation.
    """
    ctx = ctx or make_context()
    cfg = cfg or SieveConfig(limit=max(limit, 2))
    cfg.require(limit)
    sol = solve_kappa_cached(omega, ctx)
    ku, ko = float(sol.kappa_under), float(sol.kappa_over)
    tally = _Tally("scan_conjectures", f"all integers in [3, {limit}]; omega={omega}; float64 screen, "
                                       f"{ctx.mantissa_bits}-bit recheck")
    rel = 2.0**-40
    rechecked = 0
    worst_lower = None  # max of li_under - pi
    worst_at = None
    float_min = None
    count = 0
    pi_before = 1  # the prime 2
    if limit >= 3:
        for start, flags in segments(3, limit, cfg):
            cum = np.cumsum(flags, dtype=np.int64)
            odd = start + 2 * np.arange(len(flags), dtype=np.int64)
            pi_odd = pi_before + cum
            n = np.concatenate([odd, odd + 1])
            pis = np.concatenate([pi_odd, pi_odd])
            keep = n <= limit
            n, pis = n[keep], pis[keep]
            pi_before = int(pi_odd[-1])
            if not len(n):
                continue
            count += len(n)
            nf = n.astype(np.float64)
            pf = pis.astype(np.float64)
            l0, lu, lo, l1, dist = _float_families(nf, ku, ko)
            margins = (pf - l0, pf - lu, lo - pf, l1 - pf)
            scale = np.maximum(1.0, pf)
            suspect = dist < 1e-9
            for mg in margins:
                suspect |= mg < rel * scale
            clear = ~suspect
            if clear.any():
                seg_min = min(float(mg[clear].min()) for mg in margins)
                float_min = seg_min if float_min is None else min(float_min, seg_min)
            d = lu - pf
            j = int(np.argmax(d))
            if worst_lower is None or d[j] > worst_lower:
                worst_lower, worst_at = float(d[j]), int(n[j])
            for idx in np.flatnonzero(suspect):
                rechecked += 1
                x, p = int(n[idx]), int(pis[idx])
                vals = (
                    ("li0 <= pi", li_lower(x, sol, "zero", ctx), p),
                    ("li_under <= pi", li_lower(x, sol, "fractional", ctx), p),
                    ("pi <= li_over", p, li_upper(x, sol, "fractional", ctx)),
                    ("pi <= li1", p, li_upper(x, sol, "one", ctx)),
                )
                for label, a, b in vals:
                    tally.le((x, label), a, b)
    tally.points = count
    with ctx.scope():
        if float_min is not None:
            screened = gmpy2.mpfr(float_min)
            if tally.margin_min is None or screened < tally.margin_min:
                tally.margin_min = screened
    tally._hash.update(f"{limit}:{omega}".encode())
    tally.notes.update(
        rechecked=str(rechecked),
        max_lower_minus_pi=repr(worst_lower) if worst_lower is not None else "none",
        argmax_lower_minus_pi=str(worst_at),
    )
    return tally.report()
