"""Sumerian capacity metrology and large-number signs, grounded in sìla.

Transliterated quantities such as ``"4(šar'u-gal) gur₇"`` are parsed into a
:class:`Quantity`.  A unit written after a numeral without its own count is a
display hint ("this many sìla, of the order of gur₇"), not a multiplier.
"""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping

from .errors import (
    MalformedCountError,
    QuantitySyntaxError,
    TableFormatError,
    UnknownSymbolError,
    UnknownUnitError,
    ValidationError,
)
from .sexagesimal import as_rational, div

__all__ = [
    "BASE_UNIT",
    "COMMODITY_WORDS",
    "Unit",
    "NumeralSymbol",
    "Quantity",
    "UnitSystem",
    "normalize_name",
    "builtin_system",
    "parse_quantity",
    "convert",
    "rate_from_quantities",
    "load_unit_table",
    "iter_directives",
]

BASE_UNIT = "sìla"
GAL_SUFFIX = "-gal"

_APOSTROPHES = "'’ʾʼ`´"
# copula and locative endings seen on the Enmetena cone ("1 gur₇-am₆")
_ENCLITICS = ("-am6", "-am3", "-am")


def normalize_name(name: str) -> str:
    """Lookup key for a transliterated sign name.

    Diacritics, apostrophes and case are dropped and subscript digits become
    plain digits, so ``šar'u``/``šaru``/``SARU`` and ``gur₇``/``gur7`` collide.
    """
    decomposed = unicodedata.normalize("NFKD", name.strip())
    kept = "".join(
        ch for ch in decomposed
        if not unicodedata.combining(ch) and ch not in _APOSTROPHES
    )
    return kept.casefold()


COMMODITY_WORDS = frozenset(normalize_name(w) for w in ("še", "barley"))


@dataclass(frozen=True)
class Unit:
    name: str
    sila_equivalent: Fraction

    def __post_init__(self):
        object.__setattr__(self, "sila_equivalent", as_rational(self.sila_equivalent))
        if self.sila_equivalent <= 0:
            raise ValidationError(f"unit {self.name!r} must be positive")


@dataclass(frozen=True)
class NumeralSymbol:
    name: str
    value: int

    def __post_init__(self):
        if isinstance(self.value, bool) or not isinstance(self.value, int) or self.value <= 0:
            raise ValidationError(f"numeral {self.name!r} must be a positive integer")


@dataclass(frozen=True)
class Quantity:
    sila_magnitude: Fraction
    display_unit: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "sila_magnitude", as_rational(self.sila_magnitude))

    def __add__(self, other):
        if not isinstance(other, Quantity):
            return NotImplemented
        return Quantity(self.sila_magnitude + other.sila_magnitude,
                        other.display_unit or self.display_unit)


class UnitSystem:
    """Immutable registry of capacity units and numeral signs.

    Names are unique under :func:`normalize_name`, across both collections,
    since quantity parsing looks symbols up in one namespace.
    """

    units: Mapping[str, Unit]
    numerals: Mapping[str, NumeralSymbol]

    def __init__(self, units: Iterable[Unit], numerals: Iterable[NumeralSymbol] = ()):
        index: dict[str, Unit | NumeralSymbol] = {}
        unit_map: dict[str, Unit] = {}
        numeral_map: dict[str, NumeralSymbol] = {}
        for item, target in [(u, unit_map) for u in units] + [(n, numeral_map) for n in numerals]:
            key = normalize_name(item.name)
            if key in index:
                raise ValidationError(f"duplicate name {item.name!r}")
            index[key] = item
            target[item.name] = item
        base = index.get(normalize_name(BASE_UNIT))
        if not isinstance(base, Unit) or base.sila_equivalent != 1:
            raise ValidationError(f"unit system must contain {BASE_UNIT} = 1")
        for key, sym in index.items():
            if isinstance(sym, NumeralSymbol) and key.endswith(GAL_SUFFIX):
                root = index.get(key[: -len(GAL_SUFFIX)])
                if isinstance(root, NumeralSymbol) and sym.value != 60 * root.value:
                    raise ValidationError(
                        f"{sym.name} = {sym.value} but must be 60 x {root.name} = {60 * root.value}"
                    )
        self.units = MappingProxyType(unit_map)
        self.numerals = MappingProxyType(numeral_map)
        self._index = MappingProxyType(index)

    def __eq__(self, other):
        if not isinstance(other, UnitSystem):
            return NotImplemented
        return dict(self.units) == dict(other.units) and dict(self.numerals) == dict(other.numerals)

    __hash__ = None

    def __repr__(self):
        return f"UnitSystem(units={list(self.units.values())!r}, numerals={list(self.numerals.values())!r})"

    def symbol(self, name: str) -> Unit | NumeralSymbol | None:
        return self._index.get(normalize_name(name))

    def unit(self, name: str) -> Unit:
        found = self.symbol(name)
        if not isinstance(found, Unit):
            raise UnknownUnitError(name)
        return found

    def lookup(self, name: str) -> Fraction:
        """Sìla per unit, or the integer value of a numeral sign."""
        found = self.symbol(name)
        if found is None:
            raise UnknownSymbolError(name)
        if isinstance(found, Unit):
            return found.sila_equivalent
        return Fraction(found.value)

    def merged(self, units: Iterable[Unit] = (), numerals: Iterable[NumeralSymbol] = ()) -> UnitSystem:
        """A new system with ``units``/``numerals`` added or replacing same-named entries."""
        new_units = {normalize_name(u.name): u for u in self.units.values()}
        new_numerals = {normalize_name(n.name): n for n in self.numerals.values()}
        for u in units:
            new_numerals.pop(normalize_name(u.name), None)
            new_units[normalize_name(u.name)] = u
        for n in numerals:
            new_units.pop(normalize_name(n.name), None)
            new_numerals[normalize_name(n.name)] = n
        return UnitSystem(new_units.values(), new_numerals.values())


_BUILTIN = None


def builtin_system() -> UnitSystem:
    """Capacity units sìla, bán, PI, gur, gur₇ and the signs šár .. šar'u-gal."""
    global _BUILTIN
    if _BUILTIN is None:
        _BUILTIN = UnitSystem(
            [
                Unit(BASE_UNIT, Fraction(1)),
                Unit("bán", Fraction(10)),
                Unit("PI", Fraction(60)),
                Unit("gur", Fraction(300)),
                Unit("gur₇", Fraction(1152000)),  # 5,20,0,0
            ],
            [
                NumeralSymbol("šár", 3600),  # 1,0,0
                NumeralSymbol("šar'u", 36000),  # 10,0,0
                NumeralSymbol("šár-gal", 216000),  # 1,0,0,0
                NumeralSymbol("šar'u-gal", 2160000),  # 10,0,0,0
            ],
        )
    return _BUILTIN


_COUNT = re.compile(r"[+-]?\d+")
_COUNTED = re.compile(r"([+-]?\d+)\((.+)\)")


def _parse_count(text: str) -> int:
    count = int(text)
    if count <= 0:
        raise MalformedCountError(f"count must be positive, got {text}")
    return count


def _resolve(word: str, system: UnitSystem):
    found = system.symbol(word)
    if found is None:
        key = normalize_name(word)
        for suffix in _ENCLITICS:
            if key.endswith(suffix):
                found = system.symbol(key[: -len(suffix)])
                break
    if found is None:
        raise UnknownSymbolError(word)
    return found


def _tokens(text: str) -> list[str]:
    # "1 (PI)" -> "1(PI)"
    text = re.sub(r"(\d)\s+\(", r"\1(", text)
    return text.split()


def parse_quantity(text: str, system: UnitSystem | None = None) -> Quantity:
    """Parse transliterated counts of units or numeral signs.

    Terms are ``count(symbol)`` or ``count symbol``.  A trailing capacity unit
    without a count sets the display unit only; ``še``/``barley`` are
    ignored wherever they occur.

        >>> parse_quantity("4(šar'u-gal) gur₇")
        Quantity(sila_magnitude=Fraction(8640000, 1), display_unit='gur₇')
    """
    system = system or builtin_system()
    tokens = _tokens(text)
    if not tokens:
        raise QuantitySyntaxError("empty quantity")
    total = Fraction(0)
    display = None
    terms = 0
    i = 0
    while i < len(tokens):
        tok = tokens[i]
        if normalize_name(tok) in COMMODITY_WORDS:
            i += 1
            continue
        m = _COUNTED.fullmatch(tok)
        if m:
            count, word = _parse_count(m.group(1)), m.group(2)
            i += 1
        elif _COUNT.fullmatch(tok):
            count = _parse_count(tok)
            if i + 1 >= len(tokens):
                raise QuantitySyntaxError(f"count {tok} has no symbol")
            word = tokens[i + 1]
            i += 2
        else:
            sym = _resolve(tok, system)
            rest = [t for t in tokens[i + 1:] if normalize_name(t) not in COMMODITY_WORDS]
            if isinstance(sym, Unit) and terms and not rest:
                display = sym.name
                i += 1
                continue
            raise MalformedCountError(f"{tok!r} needs a count")
        sym = _resolve(word, system)
        if isinstance(sym, Unit):
            total += count * sym.sila_equivalent
            display = sym.name
        else:
            total += count * sym.value
        terms += 1
    if not terms:
        raise QuantitySyntaxError(f"no counted terms in {text!r}")
    return Quantity(total, display)


def convert(q: Quantity, target: str, system: UnitSystem | None = None) -> Fraction:
    """Magnitude of ``q`` expressed in ``target`` units."""
    system = system or builtin_system()
    return q.sila_magnitude / system.unit(target).sila_equivalent


def rate_from_quantities(interest: Quantity, principal: Quantity) -> Fraction:
    """Interest per unit principal, e.g. 1(PI) 4(bán) per 1(gur) gives 1/3."""
    return div(interest.sila_magnitude, principal.sila_magnitude)


def _parse_fraction(text: str, line: int) -> Fraction:
    m = re.fullmatch(r"([+-]?\d+)(?:/(\d+))?", text)
    if not m:
        raise TableFormatError(f"expected an integer or a/b fraction, got {text!r}", line=line)
    num, den = int(m.group(1)), int(m.group(2) or 1)
    if den == 0:
        raise TableFormatError("zero denominator", line=line)
    return Fraction(num, den)


def iter_directives(source: str) -> Iterator[tuple[int, str, list[str]]]:
    """Yield ``(line_number, keyword, args)`` for each non-blank line of a table document."""
    for lineno, raw in enumerate(source.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            keyword, *args = line.split()
            yield lineno, keyword.lower(), args


def load_unit_table(source: str) -> UnitSystem:
    """Build a system from a unit-table document merged over the builtins.

    Lines read ``unit <name> <sìla per unit>`` or ``numeral <name> <int>``;
    ``#`` starts a comment.  ``logentry`` lines belong to log tables and are
    skipped here.
    """
    base_key = normalize_name(BASE_UNIT)
    system = builtin_system()
    for lineno, keyword, args in iter_directives(source):
        if keyword == "logentry":
            continue
        if keyword not in ("unit", "numeral"):
            raise TableFormatError(f"unknown directive {keyword!r}", line=lineno)
        if len(args) != 2:
            raise TableFormatError(f"{keyword} takes a name and a value", line=lineno)
        name, raw = args
        value = _parse_fraction(raw, lineno)
        if normalize_name(name) == base_key and (keyword != "unit" or value != 1):
            raise ValidationError(f"{BASE_UNIT} is the base unit and cannot be redefined",
                                  line=lineno)
        if value <= 0:
            raise ValidationError(f"{name} must be positive", line=lineno)
        if keyword == "numeral" and value.denominator != 1:
            raise ValidationError(f"numeral {name} must be an integer", line=lineno)
        try:
            if keyword == "unit":
                system = system.merged(units=[Unit(name, value)])
            else:
                system = system.merged(numerals=[NumeralSymbol(name, int(value))])
        except ValidationError as exc:
            raise ValidationError(str(exc), line=lineno) from None
    return system
