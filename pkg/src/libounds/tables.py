"""Tables of the ω = 1/2 approximation errors at powers of ten, and Figure 1 data.

Table 1: li* - li0 and li1 - li*, each with its ratio to sqrt(x/log x).
Table 2: li* - li_under and li_over - li*, with ratios.
Table 3: pi - li_under and li_over - pi.

Every value cell is emitted twice: rounded half-even to two decimals (the
conventional display) and with 20 significant digits for machine use.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from decimal import ROUND_HALF_EVEN, Decimal
from typing import Sequence

import gmpy2

from .errors import CapacityError, ConfigurationError
from .kappa import omega_of_kappa, solve_kappa_cached
from .li import evaluate_row
from .precision import PrecisionContext, decimal_string, make_context, to_decimal
from .primes import SieveConfig, pi_power_of_ten, pi_sieve

__all__ = [
    "TableSpec",
    "TableRow",
    "COLUMNS",
    "compute_table",
    "display_value",
    "machine_value",
    "render_table",
    "parse_csv",
    "figure1_data",
]

COLUMNS = {
    1: ("eps0_star", "ratio0", "eps1_star", "ratio1"),
    2: ("eps_under_star", "ratio_under", "eps_over_star", "ratio_over"),
    3: ("pi_minus_li_under", "li_over_minus_pi"),
}
FORMATS = ("csv", "markdown")


@dataclass(frozen=True)
class TableSpec:
    table_id: int
    k_min: int = 1
    k_max: int = 29
    precision_bits: int = 192
    output_format: str = "csv"

    def __post_init__(self) -> None:
        if self.table_id not in COLUMNS:
            raise ConfigurationError(f"table_id must be 1, 2 or 3, got {self.table_id}")
        if not 1 <= self.k_min <= self.k_max <= 29:
            raise ConfigurationError(f"need 1 <= k_min <= k_max <= 29, got {self.k_min}..{self.k_max}")
        if self.output_format not in FORMATS:
            raise ConfigurationError(f"output_format must be one of {FORMATS}, got {self.output_format!r}")

    @property
    def columns(self) -> tuple[str, ...]:
        return COLUMNS[self.table_id]


@dataclass(frozen=True)
class TableRow:
    k: int
    values: tuple
    pi_x: int | None = None
    pi_source: str = ""
    boundary: tuple[str, ...] = ()


def _pi(k: int, cfg: SieveConfig) -> tuple[int, str]:
    if k <= 9 and 10**k <= cfg.limit:
        return pi_sieve(10**k, cfg), "sieve"
    try:
        return pi_power_of_ten(k), "table"
    except CapacityError:
        raise CapacityError(f"pi(10^{k}) is not available") from None


def compute_table(spec: TableSpec, cfg: SieveConfig | None = None, omega="0.5") -> list[TableRow]:
    ctx = make_context(spec.precision_bits)
    sol = solve_kappa_cached(omega, ctx)
    cfg = cfg or SieveConfig()
    rows = []
    for k in range(spec.k_min, spec.k_max + 1):
        r = evaluate_row(10**k, sol, ctx, with_li=False)
        pi_x, source = None, ""
        if spec.table_id == 1:
            vals = (r.eps0_star, r.ratio0, r.eps1_star, r.ratio1)
        elif spec.table_id == 2:
            vals = (r.eps_under_star, r.ratio_under, r.eps_over_star, r.ratio_over)
        else:
            pi_x, source = _pi(k, cfg)
            with ctx.scope():
                vals = (pi_x - r.li_under, r.li_over - pi_x)
        rows.append(TableRow(k, vals, pi_x, source, r.truncation.boundary))
    return rows


def display_value(value) -> str:
    """Two decimals, round half to even, from the exact binary value."""
    return str(to_decimal(value).quantize(Decimal("0.01"), rounding=ROUND_HALF_EVEN))


def machine_value(value) -> str:
    return decimal_string(value, 20)


def _header(spec: TableSpec) -> list[str]:
    head = ["k"]
    for c in spec.columns:
        head += [c, f"{c}_20"]
    if spec.table_id == 3:
        head += ["pi_x", "pi_source"]
    head.append("boundary")
    return head


def _cells(spec: TableSpec, row: TableRow) -> list[str]:
    out = [str(row.k)]
    for v in row.values:
        out += [display_value(v), machine_value(v)]
    if spec.table_id == 3:
        out += [str(row.pi_x), row.pi_source]
    out.append("|".join(row.boundary))
    return out


def render_table(spec: TableSpec, rows: Sequence[TableRow]) -> str:
    head = _header(spec)
    body = [_cells(spec, r) for r in rows]
    if spec.output_format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(head)
        w.writerows(body)
        return buf.getvalue()
    lines = ["| " + " | ".join(head) + " |", "|" + "---|" * len(head)]
    lines += ["| " + " | ".join(cells) + " |" for cells in body]
    return "\n".join(lines) + "\n"


def parse_csv(text: str) -> list[dict[str, str]]:
    return list(csv.DictReader(io.StringIO(text)))


def figure1_data(points: int, ctx: PrecisionContext | None = None,
                 landmarks: Sequence = ("0.5", "1")) -> list[tuple[gmpy2.mpfr, gmpy2.mpfr]]:
    """``points`` evenly spaced kappa in (0, e] with kappa(1 - log kappa).

    The grid is ``kappa_j = j e / points`` for j = 1..points, so e is the
    last point and 0 is excluded.  ``landmarks`` (by default 1/2 and the
    maximum at 1) are merged in so those rows always appear.
    """
    if points < 2:
        raise ConfigurationError(f"points must be >= 2, got {points}")
    ctx = ctx or make_context()
    e = ctx.e
    ks = [ctx.real(k) for k in landmarks]
    for j in range(1, points + 1):
        with ctx.scope():
            ks.append(e if j == points else e * j / points)
    with ctx.scope():
        ks = sorted(set(ks))
    return [(k, omega_of_kappa(k, ctx)) for k in ks]
