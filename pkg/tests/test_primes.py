import random
from decimal import ROUND_DOWN, Decimal

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from libounds.errors import CapacityError, ConfigurationError
from libounds.kappa import solve_kappa_cached
from libounds.li import li_lower
from libounds.precision import make_context, to_decimal
from libounds.primes import (
    PI_TABLE,
    CheckpointRecord,
    PiTable,
    PrimeCounter,
    SieveConfig,
    append_checkpoint,
    pi_power_of_ten,
    pi_sieve,
    prime_stream,
    read_checkpoint,
)

from oracles import PI_1E7, PRIMES_WINDOW_1E6, is_prime, pi_prefix, pi_simple, pi_trial

SMALL = SieveConfig(limit=10**7, segment_size=1 << 12)


def test_pi_small_values():
    assert pi_sieve(10) == 4
    assert pi_sieve(100) == pi_trial(100) == 25
    assert pi_sieve(10**6) == pi_simple(10**6) == 78498
    assert pi_sieve(2) == 1 and pi_sieve(1) == 0


def test_config_validation():
    with pytest.raises(ConfigurationError):
        SieveConfig(limit=1)
    with pytest.raises(ConfigurationError):
        SieveConfig(segment_size=512)
    with pytest.raises(CapacityError):
        pi_sieve(10**7 + 1, SMALL)
    with pytest.raises(CapacityError):
        list(prime_stream(0, 10**7 + 1, SMALL))


def test_prime_stream_examples():
    assert list(prime_stream(10, 20)) == [11, 13, 17, 19]
    assert list(prime_stream(1, 10)) == [2, 3, 5, 7]
    assert len(list(prime_stream(10**6, 10**6 + 10**4))) == PRIMES_WINDOW_1E6


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=3000), st.integers(min_value=0, max_value=3000))
def test_prime_stream_matches_trial_division(a, b):
    lo, hi = min(a, b), max(a, b)
    expect = [n for n in range(lo + 1, hi + 1) if is_prime(n)]
    assert list(prime_stream(lo, hi, SieveConfig(limit=10**4, segment_size=1024))) == expect


def test_partition_invariance():
    rng = random.Random(3)
    n = 10**7
    for _ in range(3):
        cuts = sorted(rng.sample(range(2, n), 6))
        bounds = [1] + cuts + [n]
        total = sum(sum(len(c) for c in [list(prime_stream(a, b, SMALL))]) for a, b in zip(bounds, bounds[1:]))
        assert total == PI_1E7 == pi_sieve(n, SMALL)


def test_counter_matches_prefix_oracle():
    prefix = pi_prefix(200_000)
    rng = random.Random(11)
    queries = sorted(rng.sample(range(1, 200_001), 500)) + [200_000]
    pc = PrimeCounter(SieveConfig(limit=200_000, segment_size=1024))
    assert [pc(q) for q in queries] == [prefix[q] for q in queries]
    with pytest.raises(ValueError):
        pc(10)


def test_counter_resume():
    prefix = pi_prefix(100_000)
    pc = PrimeCounter(SieveConfig(limit=100_000, segment_size=1024), start=5000, pi_start=prefix[5000])
    for q in (5000, 5001, 7919, 7920, 99_999):
        assert pc(q) == prefix[q]


def test_step_one_growth():
    prefix = pi_prefix(50_000)
    pc = PrimeCounter(SieveConfig(limit=50_000, segment_size=1024))
    prev = 0
    for n in range(1, 50_001):
        v = pc(n)
        assert v - prev == (1 if is_prime(n) else 0) if n < 200 else v - prev in (0, 1)
        prev = v
    assert prev == prefix[-1]


def test_table_matches_sieve():
    for k in range(1, 9):
        assert pi_power_of_ten(k) == pi_sieve(10**k)


@pytest.mark.slow
def test_table_matches_sieve_1e9():
    assert pi_power_of_ten(9) == pi_sieve(10**9)


def test_table_access():
    assert pi_power_of_ten(1) == 4 and pi_power_of_ten(6) == 78498
    for k in (0, 30, "3"):
        with pytest.raises(CapacityError):
            pi_power_of_ten(k)
    with pytest.raises(ConfigurationError):
        PiTable({1: 5, 2: 4}, {})
    assert all(PI_TABLE.provenance[k] for k in range(1, 30))


def test_table_entry_1e10_cross_check():
    # embedded pi(10^10) minus li_lower(10^10) is 34083.8688...; the printed
    # 34083.86 is that value truncated, not rounded, to two decimals
    ctx = make_context()
    value = pi_power_of_ten(10) - to_decimal(li_lower(10**10, solve_kappa_cached("0.5", ctx), "fractional", ctx))
    assert value.quantize(Decimal("0.01"), rounding=ROUND_DOWN) == Decimal("34083.86")
    assert abs(value - Decimal("34083.86")) <= Decimal("0.01")


def test_checkpoint_round_trip(tmp_path):
    path = tmp_path / "walk.ckpt"
    with open(path, "w") as fh:
        for rec in (CheckpointRecord(0, 2, 1), CheckpointRecord(1, 5, 3), CheckpointRecord(2, 16, 6)):
            append_checkpoint(fh, rec)
    assert path.read_text() == "0 2 1\n1 5 3\n2 16 6\n"
    assert read_checkpoint(path)[-1] == CheckpointRecord(2, 16, 6)
    assert read_checkpoint(tmp_path / "missing") == []
    path.write_text("0 2 1\n2 5 3\n")
    with pytest.raises(ValueError):
        read_checkpoint(path)
    path.write_text("0 2\n")
    with pytest.raises(ValueError):
        read_checkpoint(path)
