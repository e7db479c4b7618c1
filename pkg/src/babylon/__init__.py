"""Exact sexagesimal arithmetic, Sumerian capacity metrology and early compound interest."""

from .errors import *  # noqa: F401,F403
from .expr import evaluate
from .interest import (
    AccumulationResult,
    DecimalLogTable,
    DurationSolution,
    LoanTerms,
    LogTable,
    Method,
    Scan,
    accumulate,
    builtin_log_table,
    decimal_log,
    integer_duration_scan,
    load_log_tables,
    log_ratio,
    log_table_lookup,
    solve_duration_interpolated,
    solve_duration_log_approx,
    solve_duration_modern,
    solve_duration_table,
    solve_principal,
)
from .metrology import (
    NumeralSymbol,
    Quantity,
    Unit,
    UnitSystem,
    builtin_system,
    convert,
    load_unit_table,
    parse_quantity,
    rate_from_quantities,
)
from .sexagesimal import (
    Rational,
    Rendering,
    RoundingMode,
    SexLiteral,
    arith,
    div,
    enumerate_interpretations,
    format_sex,
    is_regular,
    literal_value,
    parse_sex,
    pow_int,
    reciprocal_regular,
    round_to_places,
    sex,
)

__version__ = "0.1.0"
