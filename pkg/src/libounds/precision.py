"""Extended-precision real arithmetic facade.

Every other module works with the values and helpers exported here and never
touches the big-number backend directly.  The backend is MPFR through
``gmpy2``: all elementary functions are correctly rounded, which is stronger
than the 2 ulp contract callers rely on, and results are reproducible across
runs and platforms.

Usage pattern::

    ctx = make_context(192)
    with ctx.scope():
        y = log(ctx.real("1e6"))

Arithmetic on the returned reals (``+ - * /`` and comparisons) must happen
inside ``ctx.scope()`` to be rounded at the working precision.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction
from functools import lru_cache
from typing import Union

import gmpy2
from gmpy2 import mpfr, mpq, mpz

from .errors import CapacityError, ConfigurationError

__all__ = [
    "DEFAULT_BITS",
    "MIN_BITS",
    "MAX_BITS",
    "FACTORIAL_CAP",
    "PrecisionContext",
    "Real",
    "make_context",
    "context_from_env",
    "factorial",
    "factorials",
    "log",
    "exp",
    "sqrt",
    "floor",
    "ceil",
    "power",
    "decimal_string",
    "to_decimal",
    "is_real",
]

DEFAULT_BITS = 192
MIN_BITS = 96
# The embedded gamma literal carries 100 digits (~332 bits).
MAX_BITS = 320
FACTORIAL_CAP = 10**6
ENV_PRECISION = "LIBOUNDS_PRECISION_BITS"

EULER_GAMMA = (
    "0.57721566490153286060651209008240243104215933593992"
    "35988057672348848677267776646709369470632917467495"
)

Real = mpfr
RealLike = Union[int, float, str, Fraction, "mpfr", "mpz", "mpq"]


@dataclass(frozen=True)
class PrecisionContext:
    """Working precision for all real arithmetic.

    Immutable; safe to share between threads.  ``gamma`` is the
    Euler-Mascheroni constant rounded to ``mantissa_bits``.
    """

    mantissa_bits: int = DEFAULT_BITS
    gamma: mpfr = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        bits = self.mantissa_bits
        if not isinstance(bits, int) or isinstance(bits, bool):
            raise ConfigurationError(f"mantissa_bits must be an integer, got {bits!r}")
        if bits < MIN_BITS:
            raise ConfigurationError(f"mantissa_bits must be >= {MIN_BITS}, got {bits}")
        if bits > MAX_BITS:
            raise ConfigurationError(f"mantissa_bits must be <= {MAX_BITS}, got {bits}")
        with self.scope():
            object.__setattr__(self, "gamma", mpfr(EULER_GAMMA))

    def scope(self) -> gmpy2.context:
        """Context manager that activates this precision in the current thread."""
        return gmpy2.context(precision=self.mantissa_bits)

    def real(self, value: RealLike) -> mpfr:
        """Convert ``value`` to a real at working precision (correctly rounded)."""
        with self.scope():
            if isinstance(value, Fraction):
                return mpfr(mpq(value.numerator, value.denominator))
            if isinstance(value, str):
                return mpfr(value.strip().replace("_", ""))
            return mpfr(value)

    @property
    def e(self) -> mpfr:
        with self.scope():
            return gmpy2.exp(1)

    @property
    def pi(self) -> mpfr:
        with self.scope():
            return gmpy2.const_pi()

    def ulp(self, value: mpfr) -> mpfr:
        """Unit in the last place of ``value`` at working precision."""
        with self.scope():
            if value == 0:
                return mpfr(2) ** (gmpy2.get_emin_min())
            exponent, _ = gmpy2.frexp(value)
            return gmpy2.mul_2exp(mpfr(1), exponent - self.mantissa_bits)

    def epsilon(self, guard_bits: int = 0) -> mpfr:
        """``2**(guard_bits - mantissa_bits)``, the usual relative tolerance."""
        with self.scope():
            return gmpy2.mul_2exp(mpfr(1), guard_bits - self.mantissa_bits)


@lru_cache(maxsize=16)
def make_context(mantissa_bits: int = DEFAULT_BITS) -> PrecisionContext:
    """Return the (cached) context for ``mantissa_bits``; rejects values below 96."""
    return PrecisionContext(mantissa_bits)


def context_from_env(flag_bits: int | None = None, default: int = DEFAULT_BITS) -> PrecisionContext:
    """Resolve precision from an explicit flag, then ``LIBOUNDS_PRECISION_BITS``, then ``default``."""
    if flag_bits is not None:
        return make_context(flag_bits)
    raw = os.environ.get(ENV_PRECISION)
    if raw:
        try:
            bits = int(raw)
        except ValueError as exc:
            raise ConfigurationError(f"{ENV_PRECISION} must be an integer, got {raw!r}") from exc
        return make_context(bits)
    return make_context(default)


def factorial(n: int) -> int:
    """Exact ``n!`` for ``0 <= n <= 10**6``."""
    if n < 0:
        raise ValueError(f"factorial of negative number {n}")
    if n > FACTORIAL_CAP:
        raise CapacityError(f"factorial argument {n} exceeds cap {FACTORIAL_CAP}")
    return math.factorial(n)


@lru_cache(maxsize=8)
def _factorial_table(size: int) -> tuple[int, ...]:
    out = [1]
    for k in range(1, size):
        out.append(out[-1] * k)
    return tuple(out)


def factorials(upto: int) -> tuple[int, ...]:
    """Exact ``(0!, 1!, ..., upto!)``, computed once and cached per size bucket."""
    if upto > FACTORIAL_CAP:
        raise CapacityError(f"factorial argument {upto} exceeds cap {FACTORIAL_CAP}")
    size = 1
    while size <= upto:
        size *= 2
    return _factorial_table(size)[: upto + 1]


# Thin wrappers: callers stay independent of the backend.  They round at the
# precision active in the current thread (see PrecisionContext.scope).

def log(x: mpfr) -> mpfr:
    return gmpy2.log(x)


def exp(x: mpfr) -> mpfr:
    return gmpy2.exp(x)


def sqrt(x: mpfr) -> mpfr:
    return gmpy2.sqrt(x)


def power(x: mpfr, y) -> mpfr:
    return x**y


def floor(x: mpfr) -> int:
    return int(gmpy2.floor(x))


def ceil(x: mpfr) -> int:
    return int(gmpy2.ceil(x))


def is_real(value) -> bool:
    return isinstance(value, type(mpfr(0)))


def to_decimal(value) -> Decimal:
    """Exact ``Decimal`` image of a binary real (or integer)."""
    if isinstance(value, (int, type(mpz(0)))):
        return Decimal(int(value))
    if not is_real(value):
        value = mpfr(value)
    num, den = value.as_integer_ratio()
    # den is a power of two, so the quotient has a terminating expansion.
    places = int(den).bit_length()
    with localcontext() as dctx:
        dctx.prec = len(str(abs(int(num)))) + places + 2
        return Decimal(int(num)) / Decimal(int(den))


def decimal_string(value, digits: int | None = None) -> str:
    """Decimal rendering with ``digits`` significant digits.

    With ``digits=None`` enough digits are emitted for the string to convert
    back to the identical binary value.
    """
    if isinstance(value, (int, type(mpz(0)))):
        return str(int(value))
    if not is_real(value):
        value = mpfr(value)
    if not gmpy2.is_finite(value):
        return str(value)
    if value == 0:
        return "0"
    if digits is None:
        digits = int(math.ceil(value.precision * math.log10(2))) + 1
    mantissa, exponent, _ = value.digits(10, digits)
    sign = ""
    if mantissa.startswith("-"):
        sign, mantissa = "-", mantissa[1:]
    return f"{sign}{mantissa[0]}.{mantissa[1:]}e{exponent - 1:+d}"
