"""Compound interest: accumulation and four ways of solving for unknowns.

Given ``(1 + r)**x = k``, the duration ``x`` can be found

* from approximate decimal logarithms (:func:`solve_duration_log_approx`),
* by looking ``k`` up in a table of powers (:func:`solve_duration_table`),
* by bracketing between whole years and interpolating linearly within the
  final year, in months (:func:`solve_duration_interpolated`),
* or with high-precision natural logarithms (:func:`solve_duration_modern`).

All but the last are exact rational computations.
"""

from __future__ import annotations

import bisect
import decimal
import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .errors import (
    DegenerateRateError,
    HorizonExceededError,
    NotInTableError,
    TableFormatError,
    UnsupportedArgumentError,
    UnsupportedPrimeError,
    ValidationError,
)
from .metrology import Quantity, iter_directives
from .sexagesimal import RoundingMode, as_rational, div, pow_int, round_to_places

__all__ = [
    "Method",
    "LoanTerms",
    "AccumulationResult",
    "LogTable",
    "DecimalLogTable",
    "DurationSolution",
    "Scan",
    "accumulate",
    "solve_principal",
    "builtin_log_table",
    "load_log_tables",
    "log_table_lookup",
    "solve_duration_table",
    "decimal_log",
    "solve_duration_log_approx",
    "integer_duration_scan",
    "solve_duration_interpolated",
    "log_ratio",
    "solve_duration_modern",
]


class Method(str, enum.Enum):
    LOG_APPROX = "log-approx"
    TABLE = "table"
    INTERPOLATION = "interpolation"
    MODERN = "modern"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class LoanTerms:
    principal: Quantity
    rate_per_period: Fraction
    period_years: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "rate_per_period", as_rational(self.rate_per_period))
        object.__setattr__(self, "period_years", as_rational(self.period_years))
        if self.rate_per_period <= 0:
            raise ValidationError("rate must be positive")
        if self.period_years <= 0:
            raise ValidationError("compounding period must be positive")
        if self.principal.sila_magnitude <= 0:
            raise ValidationError("principal must be positive")


@dataclass(frozen=True)
class AccumulationResult:
    exact_total: Fraction
    exact_factor: Fraction
    scribal_factor: Fraction | None = None
    scribal_total: Fraction | None = None


def accumulate(
    terms: LoanTerms,
    n_periods: int,
    scribal_places: int | None = None,
    scribal_mode: RoundingMode | str = RoundingMode.CEILING,
) -> AccumulationResult:
    """Principal plus interest after ``n_periods`` compoundings.

    With ``scribal_places`` the growth factor is also rounded to that many
    sexagesimal places before multiplying, as a scribe working with a short
    approximation (7;30 for 7;29,29,...) would.
    """
    if n_periods < 0:
        raise ValueError("n_periods must be non-negative")
    principal = terms.principal.sila_magnitude
    factor = pow_int(1 + terms.rate_per_period, n_periods)
    scribal_factor = scribal_total = None
    if scribal_places is not None:
        scribal_factor = round_to_places(factor, scribal_places, scribal_mode)
        scribal_total = principal * scribal_factor
    return AccumulationResult(principal * factor, factor, scribal_factor, scribal_total)


def solve_principal(total, r, n: int) -> Fraction:
    """The principal that grows to ``total`` after ``n`` periods at rate ``r``."""
    r = as_rational(r)
    if r <= 0:
        raise ValueError("rate must be positive")
    return div(total, pow_int(1 + r, n))


@dataclass(frozen=True)
class LogTable:
    """Exact ``(argument, exponent)`` pairs with ``base**exponent == argument``."""

    base: int
    entries: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple((int(a), int(e)) for a, e in self.entries))
        if self.base < 2:
            raise ValidationError("log table base must be at least 2")
        previous = None
        for arg, exp in self.entries:
            if exp < 0 or self.base ** exp != arg:
                raise ValidationError(f"{self.base}**{exp} != {arg}")
            if previous is not None and arg <= previous:
                raise ValidationError("log table arguments must be strictly increasing")
            previous = arg

    @classmethod
    def powers(cls, base: int, max_exponent: int = 20) -> LogTable:
        return cls(base, tuple((base ** e, e) for e in range(max_exponent + 1)))

    @property
    def arguments(self) -> list[int]:
        return [a for a, _ in self.entries]


def builtin_log_table() -> LogTable:
    """Base-2 table for exponents 0..20; includes 1,4 -> 6."""
    return LogTable.powers(2, 20)


def load_log_tables(source: str) -> dict[int, LogTable]:
    """Collect ``logentry <base> <argument> <exponent>`` lines into tables keyed by base.

    Other directives (``unit``, ``numeral``) are skipped so a single document
    can carry both unit and log tables.
    """
    rows: dict[int, list[tuple[int, int]]] = {}
    for lineno, keyword, args in iter_directives(source):
        if keyword != "logentry":
            continue
        try:
            base, arg, exp = (int(a) for a in args)
        except ValueError:
            raise TableFormatError("logentry takes three integers", line=lineno) from None
        if base < 2 or exp < 0 or base ** exp != arg:
            raise ValidationError(f"{base}**{exp} != {arg}", line=lineno)
        rows.setdefault(base, []).append((arg, exp))
    return {base: LogTable(base, tuple(sorted(set(entries)))) for base, entries in rows.items()}


def log_table_lookup(table: LogTable, value: int) -> int:
    args = table.arguments
    i = bisect.bisect_left(args, value)
    if i < len(args) and args[i] == value:
        return table.entries[i][1]
    lower = table.entries[i - 1] if i > 0 else None
    upper = table.entries[i] if i < len(args) else None
    raise NotInTableError(value, lower, upper)


@dataclass(frozen=True)
class DurationSolution:
    method: Method
    years: Fraction
    bracket: tuple[int, int] | None = None
    months_deducted: Fraction | None = None


def solve_duration_table(k, base: int, period_years, table: LogTable | None = None) -> DurationSolution:
    """Solve ``base**(x / period) = k`` by reading the exponent of ``k`` off a table."""
    k = as_rational(k)
    table = table or builtin_log_table()
    if base != table.base:
        raise UnsupportedArgumentError(f"table is for base {table.base}, not {base}")
    if k.denominator != 1 or k <= 0:
        raise UnsupportedArgumentError(f"table lookup needs a positive integer, got {k}")
    exponent = log_table_lookup(table, int(k))
    return DurationSolution(Method.TABLE, as_rational(period_years) * exponent)


@dataclass(frozen=True)
class DecimalLogTable:
    """Common logarithms of 2 and 3 as exact rationals; log 5 = 1 - log 2."""

    prime_logs: Mapping[int, Fraction] = field(
        default_factory=lambda: {2: Fraction(301, 1000), 3: Fraction(477, 1000)}
    )

    def __post_init__(self):
        logs = {int(p): as_rational(v) for p, v in dict(self.prime_logs).items()}
        if 2 not in logs or 3 not in logs:
            raise ValidationError("decimal log table needs entries for 2 and 3")
        logs.setdefault(5, 1 - logs[2])
        for p, v in logs.items():
            if not 0 < v < 1:
                raise ValidationError(f"log {p} = {v} is outside (0, 1)")
        object.__setattr__(self, "prime_logs", logs)


def _factor_235(n: int, x) -> dict[int, int]:
    exps = {}
    for p in (2, 3, 5):
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        exps[p] = e
    if n != 1:
        f = 7
        while f * f <= n and n % f:
            f += 2
        raise UnsupportedPrimeError(x, f if n % f == 0 else n)
    return exps


def decimal_log(x, table: DecimalLogTable | None = None) -> Fraction:
    """Common logarithm of ``x`` from the table, by prime factorisation over {2, 3, 5}."""
    x = as_rational(x)
    if x <= 0:
        raise ValueError("logarithm of a non-positive number")
    table = table or DecimalLogTable()
    up = _factor_235(x.numerator, x)
    down = _factor_235(x.denominator, x)
    return sum(((up[p] - down[p]) * table.prime_logs[p] for p in (2, 3, 5)), Fraction(0))


def solve_duration_log_approx(k, r, table: DecimalLogTable | None = None) -> DurationSolution:
    """``x = log k / log(1 + r)`` with tabulated decimal logs, kept exact.

    With log 2 = 0.301 and log 3 = 0.477, ``k = 15/2`` at ``r = 1/3`` gives
    0.875 / 0.125, exactly 7.
    """
    table = table or DecimalLogTable()
    growth = decimal_log(1 + as_rational(r), table)
    if growth == 0:
        raise DegenerateRateError(f"log(1 + {r}) is zero under the table")
    return DurationSolution(Method.LOG_APPROX, decimal_log(k, table) / growth)


@dataclass(frozen=True)
class Scan:
    """Outcome of stepping through whole periods: an exact hit has ``low == high``."""

    low: int
    high: int

    @property
    def exact(self) -> bool:
        return self.low == self.high


def integer_duration_scan(k, r, max_n: int = 10_000) -> Scan:
    k, r = as_rational(k), as_rational(r)
    if r <= 0:
        raise ValueError("rate must be positive")
    if k <= 1:
        raise ValueError("growth multiple must exceed 1")
    if max_n < 1:
        raise ValueError("max_n must be at least 1")
    factor = Fraction(1)
    for n in range(1, max_n + 1):
        factor *= 1 + r
        if factor == k:
            return Scan(n, n)
        if factor > k:
            return Scan(n - 1, n)
    raise HorizonExceededError(f"(1 + {r})**{max_n} is still below {k}")


def solve_duration_interpolated(k, r, months_per_year: int = 12, max_n: int = 10_000) -> DurationSolution:
    """Whole-year bracket, then linear interpolation within the last year.

    The overshoot past ``k`` at the end of year ``n`` is divided by that
    year's growth per month, giving the months to take off ``n``.
    """
    k, r = as_rational(k), as_rational(r)
    scan = integer_duration_scan(k, r, max_n)
    if scan.exact:
        return DurationSolution(Method.INTERPOLATION, Fraction(scan.high),
                                (scan.low, scan.high), Fraction(0))
    n = scan.high
    upper = pow_int(1 + r, n)
    lower = pow_int(1 + r, n - 1)
    per_month = (upper - lower) / months_per_year
    months = (upper - k) / per_month
    years = n - months / months_per_year
    return DurationSolution(Method.INTERPOLATION, years, (scan.low, scan.high), months)


def _to_decimal(x: Fraction) -> decimal.Decimal:
    return decimal.Decimal(x.numerator) / decimal.Decimal(x.denominator)


def log_ratio(k, r, digits: int = 60) -> Fraction:
    """``ln k / ln(1 + r)`` to ``digits`` significant decimal digits, as a Fraction."""
    k, r = as_rational(k), as_rational(r)
    with decimal.localcontext() as ctx:
        ctx.prec = digits + 10
        value = _to_decimal(k).ln() / _to_decimal(1 + r).ln()
        ctx.prec = digits
        return Fraction(+value)


def solve_duration_modern(k, r, frac_places: int = 2) -> DurationSolution:
    """Duration from natural logs, rounded to nearest at ``frac_places`` places."""
    k, r = as_rational(k), as_rational(r)
    if k <= 1 or r <= 0:
        raise ValueError("need k > 1 and r > 0")
    # 60**-frac_places needs about 1.8 decimal digits per place, plus margin
    digits = max(40, 2 * frac_places + 30)
    years = round_to_places(log_ratio(k, r, digits), frac_places, RoundingMode.NEAREST)
    return DurationSolution(Method.MODERN, years)
