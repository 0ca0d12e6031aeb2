"""Roots of k(1 - log k) = omega and the bound constants attached to them.

The map ``k -> k(1 - log k)`` increases from 0 to 1 on (0, 1] and decreases
back to 0 on [1, e].  Every omega in (0, 1) therefore has one root below 1
(the lower branch) and one in (1, e) (the upper branch).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import gmpy2

from .errors import DomainError
from .precision import PrecisionContext, exp, log, make_context, sqrt

__all__ = [
    "KappaSolution",
    "BoundConstants",
    "omega_of_kappa",
    "solve_kappa",
    "solve_kappa_cached",
    "constants",
    "stirling_constants",
    "GUARD_BITS",
]

# Roots and the forward map are computed with this many extra bits so the
# residual stays below 2^(8-bits)*omega even for omega near 2^-64, where a
# root rounded to working precision alone could not reach it.
GUARD_BITS = 72


@dataclass(frozen=True)
class KappaSolution:
    omega: gmpy2.mpfr
    kappa_under: gmpy2.mpfr
    kappa_over: gmpy2.mpfr
    residual_under: gmpy2.mpfr
    residual_over: gmpy2.mpfr

    @property
    def mantissa_bits(self) -> int:
        # Roots carry GUARD_BITS extra bits; omega is at working precision.
        return self.omega.precision


@dataclass(frozen=True)
class BoundConstants:
    C_under: gmpy2.mpfr
    C_over: gmpy2.mpfr
    B_under: gmpy2.mpfr
    B_over: gmpy2.mpfr
    S_under: gmpy2.mpfr
    S_over: gmpy2.mpfr
    D_under: gmpy2.mpfr
    D_over: gmpy2.mpfr

    def as_dict(self) -> dict[str, gmpy2.mpfr]:
        return {name: getattr(self, name) for name in self.__dataclass_fields__}


def omega_of_kappa(kappa, ctx: PrecisionContext | None = None) -> gmpy2.mpfr:
    """Return ``kappa * (1 - log kappa)`` for ``0 < kappa <= e``.

    The value at ``kappa = e`` (the working-precision rounding of e) is
    returned as exactly 0.
    """
    ctx = ctx or make_context()
    wide = ctx.mantissa_bits + GUARD_BITS
    with gmpy2.context(precision=wide):
        k = gmpy2.mpfr(kappa) if not isinstance(kappa, str) else gmpy2.mpfr(kappa.strip())
    e = ctx.e
    with ctx.scope():
        if not (k > 0) or k > e:
            raise DomainError(f"kappa must lie in (0, e], got {kappa}")
        if k == e:
            return gmpy2.mpfr(0)
    with gmpy2.context(precision=wide):
        value = k * (1 - log(k))
    return ctx.real(value)


def _root(omega, lo, hi, increasing: bool, bits: int):
    """Safeguarded Newton on f(k) = k(1 - log k) - omega inside [lo, hi].

    Bisection first shrinks the bracket to 8 correct bits; Newton steps
    (f'(k) = -log k) are then accepted only while they stay inside the
    current bracket, otherwise the step falls back to bisection.
    """

    def f(k):
        return k * (1 - log(k)) - omega

    def below(k):
        # True when the root lies above k.
        v = f(k)
        return v < 0 if increasing else v > 0

    coarse = gmpy2.mpfr(2) ** -8
    while hi - lo > coarse * hi:
        mid = (lo + hi) / 2
        if below(mid):
            lo = mid
        else:
            hi = mid

    tol_rel = gmpy2.mpfr(2) ** (4 - bits)
    k = (lo + hi) / 2
    for _ in range(4 * bits):
        value = f(k)
        if value == 0:
            return k
        if (value < 0) == increasing:
            lo = k
        else:
            hi = k
        slope = -log(k)
        candidate = None
        if slope != 0:
            candidate = k - value / slope
            if not (lo < candidate < hi):
                candidate = None
        if candidate is None:
            candidate = (lo + hi) / 2
        step = abs(candidate - k)
        k = candidate
        if step < tol_rel * k or hi - lo < tol_rel * k:
            break
    return k


def solve_kappa(omega, ctx: PrecisionContext | None = None) -> KappaSolution:
    """Both roots of ``k(1 - log k) = omega`` for ``0 < omega < 1``.

    Brackets are ``(2**-bits, 1)`` for the lower root and ``(1, e)`` for the
    upper one.  Omega within ``2**-64`` of 0 or 1 is rejected because the
    brackets degenerate.
    """
    ctx = ctx or make_context()
    w = ctx.real(omega)
    with ctx.scope():
        guard = gmpy2.mpfr(2) ** -64
        if not (0 < w < 1):
            raise DomainError(f"omega must lie in (0, 1), got {omega}")
        if w < guard or 1 - w < guard:
            raise DomainError(f"omega {omega} is within 2^-64 of the interval end")
    with gmpy2.context(precision=ctx.mantissa_bits + GUARD_BITS):
        tiny = gmpy2.mpfr(2) ** (-ctx.mantissa_bits)
        e = gmpy2.exp(1)
        k_under = _root(w, tiny, gmpy2.mpfr(1), True, ctx.mantissa_bits + GUARD_BITS)
        k_over = _root(w, gmpy2.mpfr(1), e, False, ctx.mantissa_bits + GUARD_BITS)
        r_under = abs(k_under * (1 - log(k_under)) - w)
        r_over = abs(k_over * (1 - log(k_over)) - w)
        bound = gmpy2.mpfr(2) ** (8 - ctx.mantissa_bits) * w
        if r_under > bound or r_over > bound:
            raise ArithmeticError(
                f"kappa solver failed to reach residual bound for omega={omega}"
            )
    return KappaSolution(w, k_under, k_over, r_under, r_over)


@lru_cache(maxsize=64)
def _solve_cached(omega_text: str, bits: int) -> KappaSolution:
    return solve_kappa(omega_text, make_context(bits))


def solve_kappa_cached(omega, ctx: PrecisionContext | None = None) -> KappaSolution:
    """``solve_kappa`` memoised on the decimal text of omega and the precision."""
    ctx = ctx or make_context()
    if isinstance(omega, KappaSolution):
        return omega
    text = omega if isinstance(omega, str) else repr(omega) if isinstance(omega, float) else str(omega)
    return _solve_cached(text, ctx.mantissa_bits)


def stirling_constants(kappa, ctx: PrecisionContext | None = None) -> tuple[gmpy2.mpfr, gmpy2.mpfr]:
    """Return ``(C, B)`` with C = sqrt(2 pi / k) e^(13/12) and B = sqrt(pi / (2 k))."""
    ctx = ctx or make_context()
    k = ctx.real(kappa)
    pi = ctx.pi
    with ctx.scope():
        if not (k > 0):
            raise DomainError(f"kappa must be positive, got {kappa}")
        c = sqrt(2 * pi / k) * exp(gmpy2.mpfr(13) / 12)
        b = sqrt(pi / (2 * k))
    return c, b


def constants(sol: KappaSolution, ctx: PrecisionContext | None = None) -> BoundConstants:
    """All eight branch constants evaluated by direct formula."""
    ctx = ctx or make_context(max(sol.mantissa_bits, 96))
    ku, ko = sol.kappa_under, sol.kappa_over
    c_u, b_u = stirling_constants(ku, ctx)
    c_o, b_o = stirling_constants(ko, ctx)
    with ctx.scope():
        s_u = (1 - ku) * c_u
        s_o = c_o * (ko + 1)
        d_u = 2 * c_u * (1 + ku) / (1 - ku)
        d_o = (ko + 3) / (ko - 1) * c_o
    return BoundConstants(c_u, c_o, b_u, b_o, s_u, s_o, d_u, d_o)
