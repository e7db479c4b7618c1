"""Result records shared by the CLI text and JSON output."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .sexagesimal import RoundingMode, format_sex

DECIMAL_PLACES = 20


def format_decimal(x: Fraction, places: int = DECIMAL_PLACES) -> str:
    """Exact decimal when ``x`` terminates in base 10, else truncated with ``...``."""
    sign = "-" if x < 0 else ""
    x = abs(x)
    whole, rem = divmod(x.numerator, x.denominator)
    digits = []
    while rem and len(digits) < places:
        d, rem = divmod(rem * 10, x.denominator)
        digits.append(str(d))
    text = sign + str(whole)
    if digits:
        text += "." + "".join(digits)
    if rem:
        text += "..."
    return text


def format_rational(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class OutputRecord:
    sex: str
    decimal: str
    rational: str
    exact: bool
    method: str | None = None
    bracket: tuple[int, int] | None = None
    months: OutputRecord | None = None

    @classmethod
    def of(cls, value: Fraction, places: int = 20, mode=RoundingMode.FLOOR, *,
           method=None, bracket=None, months=None) -> OutputRecord:
        text, exact = format_sex(value, places, mode)
        months_rec = cls.of(months, places, mode) if months is not None else None
        return cls(text, format_decimal(value), format_rational(value), exact,
                   str(method) if method is not None else None,
                   tuple(bracket) if bracket is not None else None, months_rec)

    @property
    def value(self) -> Fraction:
        return Fraction(self.rational)

    def to_dict(self) -> dict:
        out = {"sex": self.sex, "decimal": self.decimal, "rational": self.rational,
               "exact": self.exact}
        if self.method is not None:
            out["method"] = self.method
        if self.bracket is not None:
            out["bracket"] = list(self.bracket)
        if self.months is not None:
            out["months"] = self.months.to_dict()
        return out

    @classmethod
    def from_dict(cls, data: dict) -> OutputRecord:
        months = data.get("months")
        bracket = data.get("bracket")
        return cls(data["sex"], data["decimal"], data["rational"], bool(data["exact"]),
                   data.get("method"), tuple(bracket) if bracket is not None else None,
                   cls.from_dict(months) if months is not None else None)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False)

    def lines(self) -> list[str]:
        out = [f"sex: {self.sex}", f"decimal: {self.decimal}", f"rational: {self.rational}",
               f"exact: {'true' if self.exact else 'false'}"]
        if self.method is not None:
            out.append(f"method: {self.method}")
        if self.bracket is not None:
            out.append(f"bracket: {self.bracket[0]}..{self.bracket[1]}")
        if self.months is not None:
            out.append(f"months: {self.months.sex} ({self.months.rational})")
        return out
