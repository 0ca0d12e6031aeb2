"""The logarithmic integral and its truncated asymptotic approximations.

All approximations share the divergent series ``sum_k k!/log(x)^k`` scaled by
``x/log(x)``; they differ only in where it is cut (``n = floor(log x)`` for
the Stieltjes truncation, ``m = floor(kappa log x)`` for the omega families)
and how the last kept term is weighted (0, the fractional part, or 1).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import gmpy2

from .errors import DomainError
from .kappa import KappaSolution, solve_kappa_cached
from .precision import PrecisionContext, factorials, floor, log, make_context, sqrt

__all__ = [
    "LowerMode",
    "UpperMode",
    "TruncationState",
    "EvaluationRow",
    "BOUNDARY_BITS",
    "li",
    "li_star",
    "li_lower",
    "li_upper",
    "truncation",
    "evaluate_row",
    "series_terms",
]

LowerMode = Literal["zero", "fractional"]
UpperMode = Literal["fractional", "one"]

# kappa*log(x) closer than 2**-48 to an integer marks the point as a floor boundary.
BOUNDARY_BITS = 48


@dataclass(frozen=True)
class TruncationState:
    x: gmpy2.mpfr
    log_x: gmpy2.mpfr
    n: int
    alpha_star: gmpy2.mpfr
    m_under: int
    alpha_under: gmpy2.mpfr
    m_over: int
    alpha_over: gmpy2.mpfr
    boundary: tuple[str, ...] = ()

    @property
    def is_boundary(self) -> bool:
        return bool(self.boundary)


@dataclass(frozen=True)
class EvaluationRow:
    x: gmpy2.mpfr
    li: gmpy2.mpfr
    li_star: gmpy2.mpfr
    li0: gmpy2.mpfr
    li_under: gmpy2.mpfr
    li_over: gmpy2.mpfr
    li1: gmpy2.mpfr
    eps_star: gmpy2.mpfr
    eps0_star: gmpy2.mpfr
    eps1_star: gmpy2.mpfr
    eps_under_star: gmpy2.mpfr
    eps_over_star: gmpy2.mpfr
    ratio0: gmpy2.mpfr
    ratio1: gmpy2.mpfr
    ratio_under: gmpy2.mpfr
    ratio_over: gmpy2.mpfr
    truncation: TruncationState
    omega: gmpy2.mpfr | None = None


def _as_x(x, ctx: PrecisionContext) -> gmpy2.mpfr:
    value = ctx.real(x)
    if not (value >= ctx.e):
        raise DomainError(f"x must be >= e, got {x}")
    return value


def _split(value: gmpy2.mpfr, tol: gmpy2.mpfr) -> tuple[int, gmpy2.mpfr, bool]:
    m = floor(value)
    frac = value - m
    near = frac < tol or 1 - frac < tol
    return m, frac, near


def series_terms(log_x: gmpy2.mpfr, upto: int) -> list[gmpy2.mpfr]:
    """``[k!/log(x)^k for k in 0..upto]``; call inside a precision scope."""
    facts = factorials(upto)
    out = [gmpy2.mpfr(1)]
    power = gmpy2.mpfr(1)
    for k in range(1, upto + 1):
        power = power * log_x
        out.append(facts[k] / power)
    return out


def _family(scale, terms, m: int, weight) -> gmpy2.mpfr:
    # sum_{k<m} t_k + weight * t_m, then scaled; the empty sum is 0.
    total = gmpy2.mpfr(0)
    for k in range(m):
        total += terms[k]
    if weight != 0:
        total += weight * terms[m]
    return scale * total


def truncation(x, sol: KappaSolution, ctx: PrecisionContext | None = None) -> TruncationState:
    """Truncation indices and fractional weights for all families at ``x``."""
    ctx = ctx or make_context()
    xr = _as_x(x, ctx)
    with ctx.scope():
        L = log(xr)
        tol = gmpy2.mpfr(2) ** -BOUNDARY_BITS
        n, a_star, near_n = _split(L, tol)
        mu, a_u, near_u = _split(sol.kappa_under * L, tol)
        mo, a_o, near_o = _split(sol.kappa_over * L, tol)
    flags = tuple(
        name for name, hit in (("n", near_n), ("m_under", near_u), ("m_over", near_o)) if hit
    )
    return TruncationState(xr, L, n, a_star, mu, a_u, mo, a_o, flags)


def li(x, ctx: PrecisionContext | None = None) -> gmpy2.mpfr:
    """li(x) for x >= e from ``gamma + log log x + sum (log x)^k / (k k!)``.

    Every term is positive, so there is no cancellation; summation stops once
    the series has passed its peak and the next term drops below
    ``2**-(bits+8)`` of the partial sum.
    """
    ctx = ctx or make_context()
    xr = _as_x(x, ctx)
    with ctx.scope():
        L = log(xr)
        return _li_from_log(L, ctx)


def _li_from_log(L: gmpy2.mpfr, ctx: PrecisionContext) -> gmpy2.mpfr:
    stop = gmpy2.mpfr(2) ** -(ctx.mantissa_bits + 8)
    power = gmpy2.mpfr(1)  # L^k / k!
    total = gmpy2.mpfr(0)
    k = 0
    while True:
        k += 1
        power = power * L / k
        term = power / k
        total += term
        if k > L and term < stop * total:
            break
    return ctx.gamma + log(L) + total


def li_star(x, ctx: PrecisionContext | None = None) -> gmpy2.mpfr:
    """Stieltjes truncation at ``n = floor(log x)`` with weight ``log x - n``."""
    ctx = ctx or make_context()
    xr = _as_x(x, ctx)
    with ctx.scope():
        L = log(xr)
        n = floor(L)
        terms = series_terms(L, n)
        return _family(xr / L, terms, n, L - n)


def _resolve(sol, ctx) -> KappaSolution:
    if isinstance(sol, KappaSolution):
        return sol
    return solve_kappa_cached(sol, ctx)


def li_lower(x, sol, mode: LowerMode = "fractional", ctx: PrecisionContext | None = None) -> gmpy2.mpfr:
    """Lower family truncated at ``m = floor(kappa_under log x)``.

    ``mode="zero"`` drops the last term, ``mode="fractional"`` weights it by
    the fractional part of ``kappa_under log x``.  ``sol`` may be a
    :class:`KappaSolution` or an omega value.
    """
    ctx = ctx or make_context()
    sol = _resolve(sol, ctx)
    if mode not in ("zero", "fractional"):
        raise ValueError(f"lower family mode must be 'zero' or 'fractional', got {mode!r}")
    xr = _as_x(x, ctx)
    with ctx.scope():
        L = log(xr)
        y = sol.kappa_under * L
        m = floor(y)
        weight = gmpy2.mpfr(0) if mode == "zero" else y - m
        terms = series_terms(L, m)
        return _family(xr / L, terms, m, weight)


def li_upper(x, sol, mode: UpperMode = "fractional", ctx: PrecisionContext | None = None) -> gmpy2.mpfr:
    """Upper family truncated at ``m = floor(kappa_over log x)``; weight fractional part or 1."""
    ctx = ctx or make_context()
    sol = _resolve(sol, ctx)
    if mode not in ("fractional", "one"):
        raise ValueError(f"upper family mode must be 'fractional' or 'one', got {mode!r}")
    xr = _as_x(x, ctx)
    with ctx.scope():
        L = log(xr)
        y = sol.kappa_over * L
        m = floor(y)
        weight = gmpy2.mpfr(1) if mode == "one" else y - m
        terms = series_terms(L, m)
        return _family(xr / L, terms, m, weight)


def evaluate_row(x, omega=0.5, ctx: PrecisionContext | None = None, *, with_li: bool = True) -> EvaluationRow:
    """Every function value, error and normalised ratio at one ``x``.

    The series terms are computed once and shared by all families.  With
    ``with_li=False`` the convergent li series is skipped (``li`` and
    ``eps_star`` are then NaN), which is all table jobs need.
    """
    ctx = ctx or make_context()
    sol = _resolve(omega, ctx)
    state = truncation(x, sol, ctx)
    xr, L = state.x, state.log_x
    with ctx.scope():
        top = max(state.m_over, state.n) + 1
        terms = series_terms(L, top)
        scale = xr / L
        s = _family(scale, terms, state.n, state.alpha_star)
        l0 = _family(scale, terms, state.m_under, 0)
        lu = _family(scale, terms, state.m_under, state.alpha_under)
        lo = _family(scale, terms, state.m_over, state.alpha_over)
        l1 = _family(scale, terms, state.m_over, 1)
        exact = _li_from_log(L, ctx) if with_li else gmpy2.nan()
        norm = sqrt(scale)
        e0, e1, eu, eo = s - l0, l1 - s, s - lu, lo - s
        return EvaluationRow(
            x=xr,
            li=exact,
            li_star=s,
            li0=l0,
            li_under=lu,
            li_over=lo,
            li1=l1,
            eps_star=exact - s,
            eps0_star=e0,
            eps1_star=e1,
            eps_under_star=eu,
            eps_over_star=eo,
            ratio0=e0 / norm,
            ratio1=e1 / norm,
            ratio_under=eu / norm,
            ratio_over=eo / norm,
            truncation=state,
            omega=sol.omega,
        )
