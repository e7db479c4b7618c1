"""Replays of four historical compound-interest computations.

Each scenario recomputes its intermediate values with the library and
compares them against the figures attested for the text.  A replay passes
only when every line matches.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .interest import (
    DecimalLogTable,
    LoanTerms,
    accumulate,
    builtin_log_table,
    decimal_log,
    integer_duration_scan,
    log_ratio,
    log_table_lookup,
    solve_duration_interpolated,
    solve_duration_log_approx,
    solve_duration_modern,
    solve_duration_table,
    solve_principal,
)
from .metrology import Quantity, builtin_system, convert, parse_quantity, rate_from_quantities
from .records import format_decimal
from .sexagesimal import RoundingMode, format_sex, pow_int, reciprocal_regular, round_to_places, sex

__all__ = ["Check", "SCENARIOS", "run_scenario"]


@dataclass(frozen=True)
class Check:
    label: str
    actual: str
    expected: str

    @property
    def ok(self) -> bool:
        return self.actual == self.expected


def _s(x: Fraction) -> str:
    return format_sex(x).text


def enmetena() -> list[Check]:
    units = builtin_system()
    principal = parse_quantity("1(gur₇)", units)
    rate = rate_from_quantities(parse_quantity("1(PI) 4(bán)", units), parse_quantity("1(gur)", units))
    logs = DecimalLogTable({2: Fraction(301, 1000), 3: Fraction(477, 1000)})
    due = Fraction(15, 2)  # 40,0,0,0 sila against 5,20,0,0 lent
    years = solve_duration_log_approx(due, rate, logs).years
    terms = LoanTerms(principal, rate)
    result = accumulate(terms, int(years), scribal_places=1, scribal_mode=RoundingMode.CEILING)
    recorded = parse_quantity("4(šar'u-gal) gur₇", units)
    after = accumulate(LoanTerms(Quantity(result.scribal_total, "gur₇"), rate), 1)
    return [
        Check("principal 1(gur₇) in sìla", _s(principal.sila_magnitude), "5,20,0,0"),
        Check("rate 1(PI) 4(bán) per 1(gur)", _s(rate), "0;20"),
        Check("log 7;30 with log 2 = 0.301, log 3 = 0.477", format_decimal(decimal_log(due, logs)), "0.875"),
        Check("log 1;20", format_decimal(decimal_log(1 + rate, logs)), "0.125"),
        Check("years (approximate logs)", _s(years), "7"),
        Check("exact factor (1;20)^7", _s(result.exact_factor), "7;29,29,32,50,22,13,20"),
        Check("scribal factor (ceiling, 1 place)", _s(result.scribal_factor), "7;30"),
        Check("nearest rounding, not the scribe's", _s(round_to_places(result.exact_factor, 1, "nearest")),
              "7;29"),
        Check("total due in sìla", _s(result.scribal_total), "40,0,0,0"),
        Check("4(šar'u-gal) gur₇ in sìla", _s(recorded.sila_magnitude), "40,0,0,0"),
        Check("total due in gur₇", _s(convert(recorded, "gur₇", units)), "7;30"),
        Check("repaid one year later, in gur₇", _s(convert(Quantity(after.exact_total), "gur₇", units)), "10"),
    ]


def ybc4669() -> list[Check]:
    rate = sex("0;12")
    factor = pow_int(1 + rate, 3)
    principal = solve_principal(1, rate, 3)
    return [
        Check("rate", _s(rate), "0;12"),
        Check("factor (1;12)^3", _s(factor), "1;43,40,48"),
        Check("principal x", _s(principal), "0;34,43,20"),
        Check("reciprocal of 1;43,40,48", _s(reciprocal_regular(factor)), "0;34,43,20"),
        Check("x grown for 3 years", _s(principal * factor), "1"),
    ]


def vat8528() -> list[Check]:
    table = builtin_log_table()
    k = sex("1,4")
    return [
        Check("growth multiple 1,4", format_decimal(k), "64"),
        Check("table: 1,4 corresponds to", str(log_table_lookup(table, int(k))), "6"),
        Check("years at 5-year compounding", _s(solve_duration_table(k, 2, 5, table).years), "30"),
    ]


def ao6770() -> list[Check]:
    rate = sex("0;12")
    scan = integer_duration_scan(2, rate)
    interp = solve_duration_interpolated(2, rate)
    modern = solve_duration_modern(2, rate, 2)
    return [
        Check("bracketing years", f"{scan.low}..{scan.high}", "3..4"),
        Check("months deducted from 4 years", _s(interp.months_deducted), "2;33,20"),
        Check("years (linear interpolation)", _s(interp.years), "3;47,13,20"),
        Check("years (natural logs, 2 places)", _s(modern.years), "3;48,6"),
        Check("interpolation underestimates", str(interp.years < log_ratio(2, rate)).lower(), "true"),
    ]


SCENARIOS: dict[str, Callable[[], list[Check]]] = {
    "enmetena": enmetena,
    "ybc4669": ybc4669,
    "vat8528": vat8528,
    "ao6770": ao6770,
}


def run_scenario(name: str) -> list[Check]:
    try:
        fn = SCENARIOS[name]
    except KeyError:
        raise KeyError(f"unknown scenario {name!r}; choose from {', '.join(SCENARIOS)}") from None
    return fn()
