import random

import gmpy2
import pytest
from hypothesis import given, settings, strategies as st
from mpmath import mp, mpf

from libounds.errors import DomainError
from libounds.kappa import constants, omega_of_kappa, solve_kappa, solve_kappa_cached, stirling_constants
from libounds.precision import make_context

from oracles import KAPPA, kappa_bisect


def close(a, b, tol):
    return abs(mpf(str(a)) - mpf(str(b))) <= tol


@pytest.mark.parametrize("omega", sorted(KAPPA))
def test_roots_match_bisection_oracle(omega):
    sol = solve_kappa(omega)
    mp.dps = 60
    lo, hi = KAPPA[omega]
    assert close(sol.kappa_under, lo, mpf(10) ** -43 * mpf(lo))
    assert close(sol.kappa_over, hi, mpf(10) ** -43)


def test_omega_half_values():
    sol = solve_kappa("0.5")
    assert abs(float(sol.kappa_under) - 0.18668231) <= 1e-8
    assert abs(float(sol.kappa_over) - 2.155535203) <= 1e-9


def test_omega_09_forward_map_40_digits():
    ctx = make_context()
    sol = solve_kappa("0.9", ctx)
    for k in (sol.kappa_under, sol.kappa_over):
        with ctx.scope():
            assert abs(omega_of_kappa(k, ctx) - sol.omega) < gmpy2.mpfr(10) ** -40


@pytest.mark.parametrize("omega", ["0", "1", "-0.2", "1.5", "1e-30"])
def test_domain_errors(omega):
    with pytest.raises(DomainError):
        solve_kappa(omega)


def test_omega_of_kappa_endpoints():
    ctx = make_context()
    assert omega_of_kappa(ctx.e, ctx) == 0
    assert omega_of_kappa(1, ctx) == 1
    with pytest.raises(DomainError):
        omega_of_kappa(3, ctx)
    with pytest.raises(DomainError):
        omega_of_kappa(0, ctx)


def test_residual_invariant_random_omegas():
    ctx = make_context()
    rng = random.Random(7)
    for _ in range(1000):
        w = rng.uniform(0.001, 0.999)
        sol = solve_kappa(w, ctx)
        bound = gmpy2.mpfr(2) ** (8 - ctx.mantissa_bits) * sol.omega
        assert sol.residual_under <= bound and sol.residual_over <= bound
        assert abs(omega_of_kappa(sol.kappa_under, ctx) - sol.omega) <= bound
        assert abs(omega_of_kappa(sol.kappa_over, ctx) - sol.omega) <= bound
        assert 0 < sol.kappa_under < 1 < sol.kappa_over < ctx.e


@settings(max_examples=60, deadline=None)
@given(st.floats(min_value=0.01, max_value=0.98), st.floats(min_value=0.001, max_value=0.01))
def test_roots_move_apart_as_omega_falls(w, dw):
    a, b = solve_kappa(w + dw), solve_kappa(w)
    assert b.kappa_under < a.kappa_under
    assert b.kappa_over > a.kappa_over


def test_near_endpoints_solve():
    for w in ("1e-19", "0.999999"):
        sol = solve_kappa(w)
        bound = gmpy2.mpfr(2) ** (8 - 192) * sol.omega
        assert sol.residual_under <= bound and sol.residual_over <= bound


def test_constant_formulas():
    ctx = make_context()
    sol = solve_kappa_cached("0.5", ctx)
    c = constants(sol, ctx)
    with mp.workdps(50):
        ku, ko = mpf(str(sol.kappa_under)), mpf(str(sol.kappa_over))
        cu = mp.sqrt(2 * mp.pi / ku) * mp.e ** (mpf(13) / 12)
        co = mp.sqrt(2 * mp.pi / ko) * mp.e ** (mpf(13) / 12)
        expect = {
            "C_under": cu, "C_over": co,
            "B_under": mp.sqrt(mp.pi / (2 * ku)), "B_over": mp.sqrt(mp.pi / (2 * ko)),
            "S_under": (1 - ku) * cu, "S_over": co * (ko + 1),
            "D_under": mp.sqrt(8 * mp.pi / ku) * mp.e ** (mpf(13) / 12) * (1 + ku) / (1 - ku),
            "D_over": (ko + 3) / (ko - 1) * co,
        }
        for name, value in c.as_dict().items():
            assert abs(mpf(str(value)) - expect[name]) < mpf(10) ** -40 * expect[name], name


@settings(max_examples=100, deadline=None)
@given(st.floats(min_value=1e-3, max_value=2.718))
def test_b_below_c(k):
    c, b = stirling_constants(k)
    assert b < c


def test_cache_passthrough():
    ctx = make_context()
    sol = solve_kappa("0.3", ctx)
    assert solve_kappa_cached(sol, ctx) is sol
    assert solve_kappa_cached("0.3", ctx) is solve_kappa_cached("0.3", ctx)
