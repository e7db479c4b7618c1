"""Algebraic and round-trip laws over generated inputs."""

from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from babylon.errors import NonRegularError
from babylon.interest import (
    LoanTerms,
    accumulate,
    decimal_log,
    integer_duration_scan,
    log_ratio,
    solve_duration_interpolated,
    solve_principal,
)
from babylon.metrology import Quantity
from babylon.sexagesimal import (
    RoundingMode,
    SexLiteral,
    format_sex,
    is_regular,
    literal_value,
    parse_sex,
    pow_int,
    reciprocal_regular,
    round_to_places,
)

F = Fraction

digits = st.integers(0, 59)


@st.composite
def point_literals(draw):
    integer_digits = draw(st.one_of(
        st.just([0]),
        st.tuples(st.integers(1, 59), st.lists(digits, max_size=5)).map(lambda t: [t[0], *t[1]]),
    ))
    fractional_digits = draw(st.lists(digits, max_size=10))
    sign = draw(st.sampled_from([1, -1]))
    return SexLiteral(sign, tuple(integer_digits), tuple(fractional_digits), True)


rationals = st.fractions(min_value=-10 ** 6, max_value=10 ** 6, max_denominator=10 ** 4)
nonzero = rationals.filter(lambda x: x != 0)


def regular_numbers(limit=10 ** 5):
    return st.tuples(st.integers(0, 12), st.integers(0, 8), st.integers(0, 6)).map(
        lambda e: 2 ** e[0] * 3 ** e[1] * 5 ** e[2]).filter(lambda n: n <= limit)


@settings(max_examples=1000, deadline=None)
@given(point_literals())
def test_format_parse_round_trip(lit):
    value = literal_value(lit)
    text, exact = format_sex(value, len(lit.fractional_digits), RoundingMode.FLOOR)
    assert exact
    assert literal_value(parse_sex(text)) == value


@given(rationals, st.integers(0, 12), st.sampled_from(list(RoundingMode)))
def test_format_digits_in_range(x, places, mode):
    text, exact = format_sex(x, places, mode)
    for group in text.lstrip("-").replace(";", ",").split(","):
        assert 0 <= int(group) <= 59
    assert literal_value(parse_sex(text)) == (x if exact else round_to_places(x, places, mode))


def test_termination_iff_regular():
    for q in range(1, 1001):
        # oracle: 1/q terminates in base 60 iff q divides a power of 60
        terminates = 60 ** 10 % q == 0
        assert is_regular(q) == terminates
        for p in (1, q - 1 if q > 1 else 1):
            assert format_sex(F(p, q), 10).exact == terminates


@given(rationals, rationals, rationals)
def test_field_laws(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(nonzero)
def test_reciprocal_times_value(a):
    try:
        inv = reciprocal_regular(a)
    except NonRegularError:
        assert not (is_regular(abs(a.numerator)) and is_regular(a.denominator))
        return
    assert a * inv == 1
    assert format_sex(inv, 40).exact


@given(rationals, st.integers(0, 6))
def test_rounding_sandwich(x, places):
    lo = round_to_places(x, places, RoundingMode.FLOOR)
    hi = round_to_places(x, places, RoundingMode.CEILING)
    near = round_to_places(x, places, RoundingMode.NEAREST)
    assert lo <= x <= hi
    assert lo <= near <= hi
    on_grid = (x * 60 ** places).denominator == 1
    assert (lo == x == hi) == on_grid
    assert hi - lo == (0 if on_grid else F(1, 60 ** places))


@given(nonzero, st.integers(-5, 5), st.integers(-5, 5))
def test_pow_additive(a, m, n):
    assert pow_int(a, m + n) == pow_int(a, m) * pow_int(a, n)
    assert pow_int(a, m) == a ** m


@given(st.fractions(min_value=F(1, 100), max_value=10 ** 7, max_denominator=1000),
       st.sampled_from([F(1, 5), F(1, 3)]), st.integers(0, 10))
def test_accumulate_inverse(p, r, n):
    result = accumulate(LoanTerms(Quantity(p), r), n)
    assert solve_principal(result.exact_total, r, n) == p
    assert accumulate(LoanTerms(Quantity(p), r), n + 1).exact_factor == result.exact_factor * (1 + r)


regular_rates = st.tuples(st.integers(1, 30), regular_numbers(60)).map(lambda t: F(*t)).filter(
    lambda r: F(1, 60) <= r <= 2)
growth_multiples = st.fractions(min_value=F(101, 100), max_value=50, max_denominator=500).filter(
    lambda k: k > 1)


@settings(max_examples=100, deadline=None)
@given(growth_multiples, regular_rates)
def test_interpolation_laws(k, r):
    solution = solve_duration_interpolated(k, r)
    low, high = solution.bracket
    assert pow_int(1 + r, low) <= k <= pow_int(1 + r, high)
    assert low <= solution.years <= high
    assert solution.years == high - solution.months_deducted / 12
    assert 0 <= solution.months_deducted <= 12
    scan = integer_duration_scan(k, r)
    assert (scan.low, scan.high) == (low, high)
    if not scan.exact:
        assert pow_int(1 + r, low) < k < pow_int(1 + r, high)
        assert solution.years < log_ratio(k, r)


exps = st.integers(-6, 6)
smooth = st.tuples(exps, exps, exps).map(lambda e: F(2) ** e[0] * F(3) ** e[1] * F(5) ** e[2])


@given(smooth, smooth)
def test_decimal_log_additive(x, y):
    assert decimal_log(x * y) == decimal_log(x) + decimal_log(y)


@pytest.mark.parametrize("n", [1297, 2 * 7, 3 ** 4 * 11])
def test_reciprocal_rejects_non_regular(n):
    with pytest.raises(NonRegularError):
        reciprocal_regular(n)
