"""Numerical certificates for the inequalities behind the li bounds.

Each ``check_*`` function walks a grid, evaluates both sides of one or more
inequalities and returns a :class:`CheckReport`.  Inequalities are tested in
their non-strict form; observed equality is recorded separately because at
working precision it marks a boundary case rather than a failure.
"""

from __future__ import annotations

import hashlib
import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Sequence

import gmpy2

from .errors import DomainError
from .kappa import KappaSolution, constants, omega_of_kappa, solve_kappa_cached, stirling_constants
from .li import evaluate_row, li_lower, li_star, li_upper
from .precision import (
    PrecisionContext,
    decimal_string,
    exp,
    factorials,
    floor,
    ceil,
    log,
    make_context,
    sqrt,
    to_decimal,
)

__all__ = [
    "STIELTJES_BOUND",
    "DEFAULT_OMEGAS",
    "Failure",
    "CheckReport",
    "Grid",
    "log_grid",
    "boundary_cluster",
    "default_x_grid",
    "stirling_grid",
    "check_stirling_upper",
    "check_stirling_lower",
    "check_aux_identities",
    "check_floor_lemmas",
    "check_sum_factorial_power",
    "check_product_sum_bounds",
    "random_product_sum_pairs",
    "check_error_bounds",
    "check_ordering",
    "check_stieltjes",
    "check_sandwich",
    "write_certificates",
]

STIELTJES_BOUND = "1.265692883423"
DEFAULT_OMEGAS = ("0.1", "0.3", "0.5", "0.7", "0.9")
_MAX_LISTED_FAILURES = 100


def _text(value) -> str:
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}" if value.denominator != 1 else str(value.numerator)
    if isinstance(value, (tuple, list)):
        return "(" + ", ".join(_text(v) for v in value) + ")"
    if isinstance(value, str):
        return value
    try:
        return decimal_string(value)
    except (TypeError, ValueError):
        return str(value)


@dataclass(frozen=True)
class Failure:
    inputs: tuple
    lhs: Any
    rhs: Any

    def record(self) -> dict[str, str]:
        return {"input": _text(self.inputs), "lhs": _text(self.lhs), "rhs": _text(self.rhs)}


@dataclass
class CheckReport:
    check_name: str
    grid_description: str
    points_tested: int
    failures: list[Failure]
    margin_min: Any
    passed: bool
    equality_observed: bool = False
    grid_hash: str = ""
    notes: dict[str, str] = field(default_factory=dict)

    def record(self) -> dict[str, Any]:
        listed = [f.record() for f in self.failures[:_MAX_LISTED_FAILURES]]
        return {
            "check": self.check_name,
            "grid": self.grid_description,
            "grid_hash": self.grid_hash,
            "points": self.points_tested,
            "passed": self.passed,
            "failures": listed,
            "failures_total": len(self.failures),
            "margin_min": None if self.margin_min is None else _exact_text(self.margin_min),
            "equality_observed": self.equality_observed,
            "notes": self.notes,
        }

    def to_json(self) -> str:
        return json.dumps(self.record(), sort_keys=False)


def _exact_text(value) -> str:
    if isinstance(value, Fraction):
        return _text(value)
    return str(to_decimal(value).normalize()) if value != 0 else "0"


class _Tally:
    """Accumulates comparisons ``lhs <= rhs`` into a CheckReport."""

    def __init__(self, name: str, description: str):
        self.name = name
        self.description = description
        self.points = 0
        self.failures: list[Failure] = []
        self.margin_min = None
        self.equality = False
        self.notes: dict[str, str] = {}
        self._hash = hashlib.sha256(description.encode())

    def point(self, inputs: tuple) -> None:
        self.points += 1
        self._hash.update(_text(inputs).encode())

    def le(self, inputs: tuple, lhs, rhs) -> bool:
        margin = rhs - lhs
        if self.margin_min is None or margin < self.margin_min:
            self.margin_min = margin
        if lhs == rhs:
            self.equality = True
        if lhs > rhs or lhs != lhs or rhs != rhs:  # NaN never certifies
            self.failures.append(Failure(inputs, lhs, rhs))
            return False
        return True

    def fail(self, inputs: tuple, lhs, rhs) -> None:
        self.failures.append(Failure(inputs, lhs, rhs))

    def report(self) -> CheckReport:
        passed = not self.failures
        margin = self.margin_min
        # A failure can come from a precision cross-check whose margin is
        # not tracked; keep margin_min negative whenever the report fails.
        if not passed and margin is not None and margin >= 0:
            margin = -abs(margin) if margin != 0 else margin
        return CheckReport(
            check_name=self.name,
            grid_description=self.description,
            points_tested=self.points,
            failures=self.failures,
            margin_min=margin,
            passed=passed,
            equality_observed=self.equality,
            grid_hash=self._hash.hexdigest(),
            notes=self.notes,
        )


# --------------------------------------------------------------------------
# grids

@dataclass(frozen=True)
class Grid:
    description: str
    points: tuple

    def __iter__(self):
        return iter(self.points)

    def __len__(self) -> int:
        return len(self.points)


def log_grid(lo, hi, count: int, ctx: PrecisionContext | None = None) -> list:
    """``count`` points log-spaced on ``[lo, hi]``, both ends included."""
    ctx = ctx or make_context()
    a, b = ctx.real(lo), ctx.real(hi)
    with ctx.scope():
        la, lb = log(a), log(b)
        if count == 1:
            return [a]
        pts = [exp(la + (lb - la) * i / (count - 1)) for i in range(count)]
        pts[0], pts[-1] = a, b
        return pts


def boundary_cluster(kappa, lo, hi, per_boundary: int = 200, width_bits: int = 20,
                     ctx: PrecisionContext | None = None) -> list:
    """Points with ``kappa*log(x)`` within ``2**-width_bits`` of each integer in range."""
    ctx = ctx or make_context()
    k = ctx.real(kappa)
    a, b = ctx.real(lo), ctx.real(hi)
    out = []
    with ctx.scope():
        width = gmpy2.mpfr(2) ** -width_bits
        first = max(ceil(k * log(a)), 1)
        last = floor(k * log(b))
        half = max(per_boundary // 2, 1)
        for j in range(first, last + 1):
            for i in range(-half, half + 1):
                if i == 0:
                    continue
                y = j + width * i / half
                x = exp(y / k)
                if a <= x <= b:
                    out.append(x)
    return out


def default_x_grid(ctx: PrecisionContext | None = None, omega="0.5", x_max="1e12",
                   points: int = 10_000, per_boundary: int = 200) -> Grid:
    """Log-spaced grid on ``[e, x_max]`` plus clusters at every floor boundary.

    Clusters are placed for ``floor(log x)`` and for both branch floors of
    ``omega``.
    """
    ctx = ctx or make_context()
    sol = solve_kappa_cached(omega, ctx)
    e = ctx.e
    pts = log_grid(e, x_max, points, ctx)
    for k in (gmpy2.mpfr(1), sol.kappa_under, sol.kappa_over):
        pts.extend(boundary_cluster(k, e, x_max, per_boundary, ctx=ctx))
    with ctx.scope():
        pts.sort()
    desc = (f"log-spaced {points} pts on [e, {x_max}] + {per_boundary} pts within 2^-20 of "
            f"each floor boundary of log x, kappa_under log x, kappa_over log x (omega={omega}); "
            f"{ctx.mantissa_bits} bits")
    return Grid(desc, tuple(pts))


def stirling_grid(kappa, ctx: PrecisionContext | None = None, x_max="1e12", points: int = 10_000,
                  per_boundary: int = 200) -> Grid:
    """Grid on ``[e^(1/kappa), x_max]`` plus clusters at the floor boundaries of ``kappa log x``."""
    ctx = ctx or make_context()
    k = ctx.real(kappa)
    with ctx.scope():
        lo = exp(1 / k) * (1 + gmpy2.mpfr(2) ** (16 - ctx.mantissa_bits))
    pts = log_grid(lo, x_max, points, ctx)
    pts.extend(boundary_cluster(k, lo, x_max, per_boundary, ctx=ctx))
    with ctx.scope():
        pts.sort()
    desc = (f"log-spaced {points} pts on [e^(1/kappa), {x_max}] + {per_boundary} pts per floor "
            f"boundary of kappa log x; kappa={_text(k)[:24]}; {ctx.mantissa_bits} bits")
    return Grid(desc, tuple(pts))


def _points(grid) -> tuple[str, Iterable]:
    if isinstance(grid, Grid):
        return grid.description, grid.points
    pts = list(grid)
    return f"explicit grid of {len(pts)} points", pts


# --------------------------------------------------------------------------
# Stirling fractional bounds

def _stirling(kappa, x_grid, ctx, upper: bool) -> CheckReport:
    ctx = ctx or make_context()
    k = ctx.real(kappa)
    c_const, b_const = stirling_constants(k, ctx)
    w = omega_of_kappa(k, ctx)
    desc, pts = _points(x_grid)
    name = "stirling_upper" if upper else "stirling_lower"
    tally = _Tally(name, desc)
    facts = factorials(4096)
    coef_lo = coef_hi = None
    with ctx.scope():
        xs = [ctx.real(x) for x in pts]
        bad = [x for x in xs if floor(k * log(x)) < 1]
        if bad:
            raise DomainError(
                f"{len(bad)} grid points violate x >= e^(1/kappa) (first: {decimal_string(bad[0], 20)})"
            )
        for x in xs:
            L = log(x)
            m = floor(k * L)
            ratio = facts[m] / L ** (m + 1)
            sl = sqrt(L)
            bound = (c_const if upper else b_const) / (exp(w * L) * sl)
            coef = ratio * exp(w * L) * sl
            coef_lo = coef if coef_lo is None or coef < coef_lo else coef_lo
            coef_hi = coef if coef_hi is None or coef > coef_hi else coef_hi
            scaled_ratio = x * ratio
            scaled_bound = (c_const if upper else b_const) * exp((1 - w) * L) / sl
            tally.point((x,))
            if upper:
                tally.le((x, "m!/log^(m+1)"), ratio, bound)
                tally.le((x, "x m!/log^(m+1)"), scaled_ratio, scaled_bound)
            else:
                tally.le((x, "m!/log^(m+1)"), bound, ratio)
                tally.le((x, "x m!/log^(m+1)"), scaled_bound, scaled_ratio)
    tally.notes["kappa"] = _text(k)
    tally.notes["omega"] = _text(w)
    tally.notes["constant"] = _text(c_const if upper else b_const)
    if coef_lo is not None:
        # Range of m!/log^(m+1)(x) * x^omega * sqrt(log x) over the grid.
        tally.notes["observed_coefficient_min"] = decimal_string(coef_lo, 20)
        tally.notes["observed_coefficient_max"] = decimal_string(coef_hi, 20)
    return tally.report()


def check_stirling_upper(kappa, x_grid, ctx: PrecisionContext | None = None) -> CheckReport:
    """``m!/log^(m+1) x < C_k / (x^(k(1-log k)) sqrt(log x))`` and its ``x``-scaled form."""
    return _stirling(kappa, x_grid, ctx, upper=True)


def check_stirling_lower(kappa, x_grid, ctx: PrecisionContext | None = None) -> CheckReport:
    """``B_k / (x^(k(1-log k)) sqrt(log x)) < m!/log^(m+1) x`` and its ``x``-scaled form."""
    return _stirling(kappa, x_grid, ctx, upper=False)


# --------------------------------------------------------------------------
# auxiliary identities and inequalities

def check_aux_identities(x_grid, alpha_grid, ctx: PrecisionContext | None = None) -> CheckReport:
    """``a^(a log x) = x^(a log a)`` and ``(a/e)^(a log x) = x^-(a(1 - log a))`` to relative 2^-(bits-16)."""
    ctx = ctx or make_context()
    xs = [ctx.real(x) for x in x_grid]
    alphas = [ctx.real(a) for a in alpha_grid]
    tally = _Tally("aux_identities", f"{len(xs)} x values x {len(alphas)} alpha values; {ctx.mantissa_bits} bits")
    tol = ctx.epsilon(16)
    e = ctx.e
    with ctx.scope():
        for x in xs:
            lx = log(x)
            for a in alphas:
                la = log(a)
                tally.point((x, a))
                lhs1 = a ** (a * lx)
                rhs1 = x ** (a * la)
                tally.le((x, a, "a^(a log x) = x^(a log a)"), abs(lhs1 - rhs1) / abs(rhs1), tol)
                lhs2 = (a / e) ** (a * lx)
                rhs2 = 1 / x ** (a * (1 - la))
                tally.le((x, a, "(a/e)^(a log x) = 1/x^(a(1-log a))"), abs(lhs2 - rhs2) / abs(rhs2), tol)
    return tally.report()


def check_floor_lemmas(a_grid, r_s_pairs, ctx: PrecisionContext | None = None) -> CheckReport:
    """Floor/ceiling sandwiches and the ``(r/s)`` power inequalities.

    ``a`` values may be ints, Fractions or decimal strings; ``r, s`` are
    positive with ``r <= s``.  Integer exponents are handled exactly.
    """
    ctx = ctx or make_context()
    values = [Fraction(a) if isinstance(a, (int, Fraction)) else Fraction(str(a)) for a in a_grid]
    pairs = [(Fraction(r), Fraction(s)) for r, s in r_s_pairs]
    tally = _Tally("floor_lemmas", f"{len(values)} a values x {len(pairs)} (r, s) pairs; {ctx.mantissa_bits} bits")
    for a in values:
        if a <= 0:
            raise DomainError(f"a must be positive, got {a}")
        fl, cl = a.__floor__(), a.__ceil__()
        tally.point((a,))
        tally.le((a, "a-1 < floor a"), a - 1, fl)
        tally.le((a, "floor a <= ceil a"), fl, cl)
        tally.le((a, "ceil a < a+1"), cl, a + 1)
        if a - 1 == fl or cl == a + 1:
            tally.fail((a, "strict floor/ceil sandwich"), fl, cl)
        for r, s in pairs:
            if not (0 < r <= s):
                raise DomainError(f"need 0 < r <= s, got r={r}, s={s}")
            q = r / s
            tally.point((a, r, s))
            with ctx.scope():
                if a.denominator == 1:
                    qa = _num(q ** int(a))
                else:
                    qa = _num(q) ** _num(a)
                tally.le((a, r, s, "(r/s)^floor a <= (s/r)(r/s)^a"), _num(q ** fl), _num(1 / q) * qa)
                tally.le((a, r, s, "(r/s)(r/s)^a <= (r/s)^ceil a"), _num(q) * qa, _num(q ** cl))
    return tally.report()


def _num(v):
    # Fraction -> mpfr at the active precision; reals pass through.
    if isinstance(v, Fraction):
        return gmpy2.mpfr(gmpy2.mpq(v.numerator, v.denominator))
    return v


def _sum_factorial_power_exact(n: int) -> Fraction:
    facts = factorials(n)
    num = sum(facts[k] * n ** (n - k) for k in range(1, n + 1))
    return Fraction(num, n**n)


def check_sum_factorial_power(n_max: int, ctx: PrecisionContext | None = None) -> CheckReport:
    """``S(n) = sum_{k=1..n} k!/n^k`` satisfies ``S(n) <= 1`` and ``S(n+1) <= S(n)``.

    Sums are exact rationals; each is also evaluated at working precision and
    must agree to relative ``2**-(bits-16)``.
    """
    if n_max < 2:
        raise DomainError(f"n_max must be >= 2, got {n_max}")
    ctx = ctx or make_context()
    tally = _Tally("sum_factorial_power", f"n = 1..{n_max} (exact rationals); {ctx.mantissa_bits} bits cross-check")
    tol = ctx.epsilon(16)
    facts = factorials(n_max + 1)
    worst = gmpy2.mpfr(0)
    prev = None
    for n in range(1, n_max + 2):
        exact = _sum_factorial_power_exact(n)
        with ctx.scope():
            approx = gmpy2.mpfr(0)
            for k in range(1, n + 1):
                approx += facts[k] / gmpy2.mpfr(n) ** k
            rel = abs(approx - _num(exact)) / _num(exact)
        worst = max(worst, rel)
        if rel > tol:
            tally.fail((n, "precision agreement"), rel, tol)
        if n <= n_max:
            tally.point((n,))
            tally.le((n, "S(n) <= 1"), exact, Fraction(1))
        if prev is not None:
            tally.le((n - 1, "S(n+1) <= S(n)"), exact, prev)
        prev = exact
    tally.notes["max_relative_disagreement"] = _text(worst)
    return tally.report()


def _lower_terms(y, m: int, n: int):
    # T_k = prod_{i=1..k} (m+i) / y^k, k = 1..n-m
    out, t = [], None
    for k in range(1, n - m + 1):
        factor = (m + k) / y
        t = factor if t is None else t * factor
        out.append(t)
    return out


def _upper_terms(y, m: int, n: int):
    # U_k = y^k prod_{i=0..k-1} 1/(m-i), k = 1..m-n
    out, t = [], None
    for k in range(1, m - n + 1):
        factor = y / (m - k + 1)
        t = factor if t is None else t * factor
        out.append(t)
    return out


def random_product_sum_pairs(count: int, seed: int = 0, y_max: int = 150) -> tuple[list, list]:
    """``count`` lower-form and ``count`` upper-form ``(y, m)`` pairs with rational ``y``."""
    rng = random.Random(seed)
    ys, ms = [], []
    for _ in range(count):
        y = Fraction(rng.randint(2_000, y_max * 1000), rng.randint(1_000, 1_999))
        n = y.__floor__()
        ys.append(y)
        ms.append(rng.randint(0, n - 1))
    for _ in range(count):
        y = Fraction(rng.randint(2_000, y_max * 1000), rng.randint(1_000, 1_999))
        n = y.__floor__()
        ys.append(y)
        ms.append(rng.randint(n + 1, 2 * n + 10))
    return ys, ms


def check_product_sum_bounds(y_grid: Sequence, m_choices: Sequence[int],
                             ctx: PrecisionContext | None = None) -> CheckReport:
    """Termwise domination, simple and geometric bounds for both product sums.

    ``y_grid`` and ``m_choices`` are paired element by element.  Pairs with
    ``m < floor(y)`` exercise the lower forms, ``m > floor(y)`` the upper
    forms; ``m == floor(y)``, ``m < 0`` or ``y < 1`` are rejected and
    counted in ``notes``.  Rational ``y`` is summed exactly and the same sum
    at working precision must agree to relative ``2**-(bits-16)``.
    """
    ctx = ctx or make_context()
    ys, ms = list(y_grid), list(m_choices)
    if len(ys) != len(ms):
        raise ValueError("y_grid and m_choices must have the same length")
    tally = _Tally("product_sum_bounds", f"{len(ys)} (y, m) pairs; {ctx.mantissa_bits} bits cross-check")
    tol = ctx.epsilon(16)
    rejected = 0
    lower_pairs = upper_pairs = 0
    worst = gmpy2.mpfr(0)
    for y, m in zip(ys, ms):
        exact = isinstance(y, (int, Fraction))
        yv = Fraction(y) if exact else ctx.real(y)
        n = floor(yv) if not exact else yv.__floor__()
        if yv < 1 or m < 0 or m == n:
            rejected += 1
            continue
        tally.point((yv, m))
        with ctx.scope():
            yr = _num(yv) if exact else yv
            if m < n:
                lower_pairs += 1
                terms = _lower_terms(yv, m, n)
                total = sum(terms, Fraction(0) if exact else gmpy2.mpfr(0))
                tally.le((yv, m, "lower sum <= n - m"), total, n - m)
                tally.le((yv, m, "lower sum <= 2(y+m)/(y-m)"), total, 2 * (yv + m) / (yv - m))
                tally.le((yv, m, "T_1 <= 1"), terms[0], 1)
                for k in range(1, len(terms)):
                    tally.le((yv, m, k + 1, "T_(k+1) <= T_k"), terms[k], terms[k - 1])
                approx = sum(_lower_terms(yr, m, n), gmpy2.mpfr(0))
            else:
                upper_pairs += 1
                terms = _upper_terms(yv, m, n)
                total = sum(terms, Fraction(0) if exact else gmpy2.mpfr(0))
                tally.le((yv, m, "upper sum <= m - n"), total, m - n)
                tally.le((yv, m, "upper sum <= 2(2y/(m-y+1))"), total, 2 * (2 * yv / (m - yv + 1)))
                tally.le((yv, m, "U_1 = y/m <= 1"), terms[0], 1)
                for k in range(1, len(terms)):
                    tally.le((yv, m, k + 1, "U_(k+1) <= U_k"), terms[k], terms[k - 1])
                approx = sum(_upper_terms(yr, m, n), gmpy2.mpfr(0))
            if exact:
                ref = _num(total)
                rel = abs(approx - ref) / ref
                worst = max(worst, rel)
                if rel > tol:
                    tally.fail((yv, m, "precision agreement"), rel, tol)
    tally.notes.update(
        rejected=str(rejected), lower_pairs=str(lower_pairs), upper_pairs=str(upper_pairs),
        max_relative_disagreement=_text(worst),
    )
    return tally.report()


# --------------------------------------------------------------------------
# approximation-family statements

def _grid_for(omega, x_grid, ctx, x_max="1e12", points=10_000, per_boundary=200):
    if x_grid is not None:
        return _points(x_grid)
    grid = default_x_grid(ctx, omega, x_max, points, per_boundary)
    return grid.description, grid.points


def _raw_lower_bound(L, m: int, n: int, c_const, x_pow, sl):
    # C x^(1-w)/sqrt(log x) * (1 + sum_{j=1..n-m} prod_{i=1..j} (m+i)/log x)
    total = gmpy2.mpfr(1)
    t = gmpy2.mpfr(1)
    for j in range(1, n - m + 1):
        t = t * (m + j) / L
        total += t
    return c_const * x_pow / sl * total


def _raw_upper_bound(L, m: int, n: int, c_const, x_pow, sl):
    # C x^(1-w)/sqrt(log x) * (1 + sum_{j=1..m-n} log^j x prod_{i=0..j-1} 1/(m-i))
    total = gmpy2.mpfr(1)
    t = gmpy2.mpfr(1)
    for j in range(1, m - n + 1):
        t = t * L / (m - j + 1)
        total += t
    return c_const * x_pow / sl * total


def check_error_bounds(omega_grid=DEFAULT_OMEGAS, x_grid=None, ctx: PrecisionContext | None = None, *,
                       x_max="1e12", points: int = 10_000, per_boundary: int = 200,
                       forms: Sequence[str] = ("S", "D", "raw")) -> CheckReport:
    """Non-negativity and the S-, D- and raw-sum bounds for both families.

    For the lower family (weights 0 and the fractional part) and the upper
    family (fractional part and 1):

    * ``0 <= eps``
    * ``eps <= S x^(1-w) sqrt(log x)`` (form ``"S"``)
    * ``eps <= D x^(1-w) / sqrt(log x)`` (form ``"D"``)
    * ``eps <= C x^(1-w)/sqrt(log x) * (1 + partial product sum)`` (form ``"raw"``)
    """
    ctx = ctx or make_context()
    omegas = list(omega_grid)
    descs = []
    tally = None
    for omega in omegas:
        sol = solve_kappa_cached(omega, ctx)
        bc = constants(sol, ctx)
        desc, pts = _grid_for(omega, x_grid, ctx, x_max, points, per_boundary)
        descs.append(f"omega={omega}: {desc}")
        if tally is None:
            tally = _Tally("error_bounds", "")
        for x in pts:
            row = evaluate_row(x, sol, ctx, with_li=False)
            st = row.truncation
            with ctx.scope():
                L = st.log_x
                sl = sqrt(L)
                x_pow = exp((1 - sol.omega) * L)
                tally.point((omega, row.x))
                key = (omega, row.x)
                lower = (("eps0", row.eps0_star), ("eps_under", row.eps_under_star))
                upper = (("eps1", row.eps1_star), ("eps_over", row.eps_over_star))
                for label, eps in lower + upper:
                    tally.le(key + (f"0 <= {label}",), 0, eps)
                if "S" in forms:
                    s_lo = bc.S_under * x_pow * sl
                    s_hi = bc.S_over * x_pow * sl
                    for label, eps in lower:
                        tally.le(key + (f"{label} <= S_under form",), eps, s_lo)
                    for label, eps in upper:
                        tally.le(key + (f"{label} <= S_over form",), eps, s_hi)
                if "D" in forms:
                    d_lo = bc.D_under * x_pow / sl
                    d_hi = bc.D_over * x_pow / sl
                    for label, eps in lower:
                        tally.le(key + (f"{label} <= D_under form",), eps, d_lo)
                    for label, eps in upper:
                        tally.le(key + (f"{label} <= D_over form",), eps, d_hi)
                if "raw" in forms:
                    r_lo = _raw_lower_bound(L, st.m_under, st.n, bc.C_under, x_pow, sl)
                    r_hi = _raw_upper_bound(L, st.m_over, st.n, bc.C_over, x_pow, sl)
                    for label, eps in lower:
                        tally.le(key + (f"{label} <= raw lower sum",), eps, r_lo)
                    for label, eps in upper:
                        tally.le(key + (f"{label} <= raw upper sum",), eps, r_hi)
    tally.description = "; ".join(descs) + f"; forms={','.join(forms)}"
    tally._hash = hashlib.sha256(tally.description.encode())
    return tally.report()


def check_ordering(x_grid=None, ctx: PrecisionContext | None = None, omega="0.5", **grid_kw) -> CheckReport:
    """``li0 <= li_under <= li <= li_over <= li1`` and the same chain with ``li_star`` in the middle."""
    ctx = ctx or make_context()
    sol = solve_kappa_cached(omega, ctx)
    desc, pts = _grid_for(omega, x_grid, ctx, **grid_kw)
    tally = _Tally("ordering", desc)
    for x in pts:
        r = evaluate_row(x, sol, ctx)
        tally.point((r.x,))
        with ctx.scope():
            for mid_name, mid in (("li", r.li), ("li_star", r.li_star)):
                chain = (("li0", r.li0), ("li_under", r.li_under), (mid_name, mid),
                         ("li_over", r.li_over), ("li1", r.li1))
                for (na, va), (nb, vb) in zip(chain, chain[1:]):
                    tally.le((r.x, f"{na} <= {nb}"), va, vb)
    return tally.report()


def check_stieltjes(x_grid=None, ctx: PrecisionContext | None = None, bound: str = STIELTJES_BOUND,
                    **grid_kw) -> CheckReport:
    """``|li(x) - li_star(x)| <= 1.265692883423`` at every grid point."""
    ctx = ctx or make_context()
    desc, pts = _grid_for("0.5", x_grid, ctx, **grid_kw)
    tally = _Tally("stieltjes", desc)
    b = ctx.real(bound)
    worst, where = None, None
    sol = solve_kappa_cached("0.5", ctx)
    for x in pts:
        r = evaluate_row(x, sol, ctx)
        with ctx.scope():
            err = abs(r.eps_star)
        tally.point((r.x,))
        tally.le((r.x, "|li - li_star| <= bound"), err, b)
        if worst is None or err > worst:
            worst, where = err, r.x
    if worst is not None:
        tally.notes["max_abs_error"] = decimal_string(worst, 25)
        tally.notes["argmax_x"] = decimal_string(where, 25)
    return tally.report()


def check_sandwich(omega_grid=DEFAULT_OMEGAS, x_grid=None, ctx: PrecisionContext | None = None,
                   **grid_kw) -> CheckReport:
    """``li_lower(mode) <= li_star <= li_upper(mode)`` for every omega and mode.

    The lower inequality is strict in theory; equality is flagged through
    ``equality_observed`` and counted as a failure.
    """
    ctx = ctx or make_context()
    descs = []
    tally = _Tally("sandwich", "")
    for omega in omega_grid:
        sol = solve_kappa_cached(omega, ctx)
        desc, pts = _grid_for(omega, x_grid, ctx, **grid_kw)
        descs.append(f"omega={omega}: {desc}")
        for x in pts:
            r = evaluate_row(x, sol, ctx, with_li=False)
            tally.point((omega, r.x))
            for label, val in (("li_lower(zero)", r.li0), ("li_lower(fractional)", r.li_under)):
                if tally.le((omega, r.x, f"{label} < li_star"), val, r.li_star) and val == r.li_star:
                    tally.fail((omega, r.x, f"{label} < li_star (equality)"), val, r.li_star)
            for label, val in (("li_upper(fractional)", r.li_over), ("li_upper(one)", r.li1)):
                tally.le((omega, r.x, f"li_star <= {label}"), r.li_star, val)
    tally.description = "; ".join(descs)
    tally._hash = hashlib.sha256(tally.description.encode())
    return tally.report()


def write_certificates(reports: Iterable[CheckReport], fh) -> bool:
    """Write one JSON record per report; return True when all passed."""
    ok = True
    for rep in reports:
        fh.write(rep.to_json() + "\n")
        ok = ok and rep.passed
    fh.flush()
    return ok
