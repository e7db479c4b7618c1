"""Exact base-60 arithmetic.

Values are :class:`fractions.Fraction` throughout; digit strings exist only
at the edges (parsing and rendering).  Notation follows the modern
convention: ``,`` separates digits and ``;`` marks the sexagesimal point,
so ``7;30`` is seven and a half and ``5,20,0,0`` is 1152000.

    >>> format_sex(pow_int(Fraction(4, 3), 7)).text
    '7;29,29,32,50,22,13,20'
    >>> format_sex(Fraction(1, 7), 3).text
    '0;8,34,17'
"""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .errors import (
    MalformedDigitError,
    NonRegularError,
    NotFloatingLiteralError,
    SexSyntaxError,
)

__all__ = [
    "BASE",
    "MAX_GROUPS",
    "Rational",
    "RoundingMode",
    "SexLiteral",
    "Rendering",
    "as_rational",
    "parse_sex",
    "literal_value",
    "sex",
    "enumerate_interpretations",
    "format_sex",
    "arith",
    "div",
    "pow_int",
    "is_regular",
    "non_regular_prime",
    "places_needed",
    "reciprocal_regular",
    "round_to_places",
]

BASE = 60
MAX_GROUPS = 64
MAX_SHIFT = 8

Rational = Fraction


class RoundingMode(enum.Enum):
    FLOOR = "floor"
    CEILING = "ceiling"
    NEAREST = "nearest"  # half-up: ties go away from zero

    @classmethod
    def _missing_(cls, value):
        if isinstance(value, str):
            key = value.strip().lower().replace("_", "-")
            if key in ("nearest-half-up", "half-up", "round"):
                return cls.NEAREST
            if key == "ceil":
                return cls.CEILING
            for member in cls:
                if member.value == key:
                    return member
        return None


def as_rational(x) -> Fraction:
    """Coerce ``int``/``Fraction`` to ``Fraction``; floats are refused."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool) or isinstance(x, float):
        raise TypeError(f"refusing inexact value {x!r}; pass an int or Fraction")
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


@dataclass(frozen=True)
class SexLiteral:
    """A parsed digit string.

    ``sign`` is +1 or -1.  A literal written without ``;`` has
    ``has_point=False`` and its magnitude is, historically, ambiguous up to a
    power of 60; :func:`literal_value` reads it as an integer.
    """

    sign: int
    integer_digits: tuple[int, ...]
    fractional_digits: tuple[int, ...] = ()
    has_point: bool = False

    def __post_init__(self):
        object.__setattr__(self, "integer_digits", tuple(self.integer_digits))
        object.__setattr__(self, "fractional_digits", tuple(self.fractional_digits))
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if not self.integer_digits:
            raise ValueError("integer_digits must be non-empty")
        if not self.has_point and self.fractional_digits:
            raise ValueError("fractional digits require a sexagesimal point")
        for d in self.integer_digits + self.fractional_digits:
            if not 0 <= d < BASE:
                raise MalformedDigitError(str(d))
        if len(self.integer_digits) > 1 and self.integer_digits[0] == 0:
            raise ValueError("leading integer digit must be nonzero")

    def __str__(self):
        text = ",".join(map(str, self.integer_digits))
        if self.has_point:
            text += ";" + ",".join(map(str, self.fractional_digits))
        return ("-" if self.sign < 0 else "") + text


_GROUP = re.compile(r"\d{1,2}")


def _split_groups(part, text):
    groups = part.split(",")
    digits = []
    for g in groups:
        g = g.strip()
        if not g:
            raise SexSyntaxError(f"empty digit group in {text!r}")
        if not g.isascii() or not g.isdigit():
            raise SexSyntaxError(f"not a digit group: {g!r}")
        if not _GROUP.fullmatch(g) or int(g) >= BASE:
            raise MalformedDigitError(g)
        digits.append(int(g))
    return digits


def parse_sex(text: str) -> SexLiteral:
    """Parse ``[-]d,d,...[;d,d,...]`` into a :class:`SexLiteral`.

    Leading zero groups of the integer part are dropped (``0,30`` is ``30``);
    a trailing ``;`` with nothing after it is a syntax error.
    """
    s = text.strip()
    if not s:
        raise SexSyntaxError("empty sexagesimal literal")
    sign = 1
    if s[0] in "+-−":
        sign = -1 if s[0] != "+" else 1
        s = s[1:].lstrip()
    if s.count(";") > 1:
        raise SexSyntaxError(f"more than one sexagesimal point in {text!r}")
    int_part, sep, frac_part = s.partition(";")
    if not int_part.strip():
        raise SexSyntaxError(f"missing integer part in {text!r}")
    integer_digits = _split_groups(int_part, text)
    fractional_digits = _split_groups(frac_part, text) if sep else []
    if len(integer_digits) + len(fractional_digits) > MAX_GROUPS:
        raise SexSyntaxError(f"literal longer than {MAX_GROUPS} digit groups")
    while len(integer_digits) > 1 and integer_digits[0] == 0:
        integer_digits.pop(0)
    if not any(integer_digits) and not any(fractional_digits):
        sign = 1
    return SexLiteral(sign, tuple(integer_digits), tuple(fractional_digits), bool(sep))


def literal_value(lit: SexLiteral) -> Fraction:
    value = Fraction(0)
    for d in lit.integer_digits:
        value = value * BASE + d
    scale = Fraction(1)
    for d in lit.fractional_digits:
        scale /= BASE
        value += d * scale
    return lit.sign * value


def sex(text: str) -> Fraction:
    """Shorthand for ``literal_value(parse_sex(text))``."""
    return literal_value(parse_sex(text))


def enumerate_interpretations(lit: SexLiteral | str, shift_range: tuple[int, int]) -> list[Fraction]:
    """All readings ``value * 60**k`` of a point-less literal, ``k`` ascending.

    ``shift_range`` is an inclusive ``(low, high)`` pair with ``|k| <= 8``.
    ``"30"`` over ``(-1, 0)`` gives ``[1/2, 30]``, the ``30 gi`` ambiguity.
    """
    if isinstance(lit, str):
        lit = parse_sex(lit)
    if lit.has_point:
        raise NotFloatingLiteralError(f"{lit} has a fixed sexagesimal point")
    low, high = shift_range
    if low > high:
        raise ValueError(f"empty shift range {shift_range}")
    if max(abs(low), abs(high)) > MAX_SHIFT:
        raise ValueError(f"shift range exceeds +/-{MAX_SHIFT}")
    value = literal_value(lit)
    return [value * Fraction(BASE) ** k for k in range(low, high + 1)]


def _expand(x: Fraction, places: int):
    """Digits of ``|x|``: (integer digits, up to ``places`` fractional digits, terminated)."""
    x = abs(x)
    whole, rem = divmod(x.numerator, x.denominator)
    integer_digits = []
    while whole:
        whole, d = divmod(whole, BASE)
        integer_digits.append(d)
    integer_digits.reverse()
    fractional_digits = []
    den = x.denominator
    while rem and len(fractional_digits) < places:
        d, rem = divmod(rem * BASE, den)
        fractional_digits.append(d)
    return integer_digits or [0], fractional_digits, rem == 0


class Rendering(NamedTuple):
    text: str
    exact: bool


def format_sex(x, max_frac_places: int = 20, mode: RoundingMode | str = RoundingMode.FLOOR) -> Rendering:
    """Render ``x`` in sexagesimal notation.

    Terminating expansions within ``max_frac_places`` come back verbatim with
    ``exact=True``.  Anything else is rounded with ``mode`` first and flagged
    ``exact=False``.  Trailing zero digits are never printed.
    """
    x = as_rational(x)
    if max_frac_places < 0:
        raise ValueError("max_frac_places must be non-negative")
    integer_digits, fractional_digits, exact = _expand(x, max_frac_places)
    if not exact:
        x = round_to_places(x, max_frac_places, mode)
        integer_digits, fractional_digits, _ = _expand(x, max_frac_places)
    while fractional_digits and fractional_digits[-1] == 0:
        fractional_digits.pop()
    text = ",".join(map(str, integer_digits))
    if fractional_digits:
        text += ";" + ",".join(map(str, fractional_digits))
    if x < 0:
        text = "-" + text
    return Rendering(text, exact)


_OPS = {
    "add": lambda a, b: a + b,
    "sub": lambda a, b: a - b,
    "mul": lambda a, b: a * b,
}


def arith(a, b, op: str) -> Fraction:
    try:
        fn = _OPS[op]
    except KeyError:
        raise ValueError(f"unknown operation {op!r}; expected add, sub or mul") from None
    return fn(as_rational(a), as_rational(b))


def div(a, b) -> Fraction:
    b = as_rational(b)
    if b == 0:
        raise ZeroDivisionError("division by zero")
    return as_rational(a) / b


def pow_int(a, n: int) -> Fraction:
    """Exact integer power by repeated squaring."""
    a = as_rational(a)
    if n < 0:
        if a == 0:
            raise ZeroDivisionError("zero raised to a negative power")
        a, n = 1 / a, -n
    result = Fraction(1)
    while n:
        if n & 1:
            result *= a
        a *= a
        n >>= 1
    return result


def _strip_regular(n: int) -> int:
    for p in (2, 3, 5):
        while n % p == 0:
            n //= p
    return n


def _smallest_prime_factor(n: int) -> int:
    if n % 2 == 0:
        return 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return f
        f += 2
    return n


def non_regular_prime(n: int) -> int | None:
    """Smallest prime factor of ``n`` outside {2, 3, 5}, or None if regular."""
    if n < 1:
        raise ValueError("regularity is defined for positive integers")
    rest = _strip_regular(n)
    return None if rest == 1 else _smallest_prime_factor(rest)


def is_regular(n: int) -> bool:
    """True iff ``n`` has the form 2**a * 3**b * 5**c."""
    if n < 1:
        raise ValueError("regularity is defined for positive integers")
    return _strip_regular(n) == 1


def places_needed(q: int) -> int | None:
    """Fractional places needed to write 1/q exactly; None when q is not regular."""
    if not is_regular(q):
        return None
    exps = []
    for p in (2, 3, 5):
        e = 0
        while q % p == 0:
            q //= p
            e += 1
        exps.append(e)
    a, b, c = exps
    # 60 = 2**2 * 3 * 5
    return max((a + 1) // 2, b, c)


def reciprocal_regular(a) -> Fraction:
    """``1/a`` for a value whose numerator and denominator are both regular."""
    a = as_rational(a)
    if a == 0:
        raise ZeroDivisionError("zero has no reciprocal")
    for part in (abs(a.numerator), a.denominator):
        prime = non_regular_prime(part)
        if prime is not None:
            raise NonRegularError(a, prime)
    return 1 / a


def round_to_places(x, places: int, mode: RoundingMode | str = RoundingMode.FLOOR) -> Fraction:
    """Round ``x`` to a multiple of ``60**-places``."""
    x = as_rational(x)
    if places < 0:
        raise ValueError("places must be non-negative")
    mode = RoundingMode(mode)
    scale = BASE ** places
    scaled = x * scale
    if mode is RoundingMode.FLOOR:
        n = math.floor(scaled)
    elif mode is RoundingMode.CEILING:
        n = math.ceil(scaled)
    else:
        n = math.floor(abs(scaled) + Fraction(1, 2))
        if scaled < 0:
            n = -n
    return Fraction(n, scale)
