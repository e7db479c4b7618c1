"""Exception hierarchy.

Every library error derives from :class:`BabylonError`.  ``exit_code`` is the
process status the CLI reports for that family: 2 for malformed input text,
3 for domain failures (non-regular numbers, missing table entries, ...).
"""


class BabylonError(Exception):
    exit_code = 3


class ParseError(BabylonError, ValueError):
    """Input text does not follow the expected notation."""

    exit_code = 2

    def __init__(self, message, *, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class SexSyntaxError(ParseError):
    pass


class MalformedDigitError(SexSyntaxError):
    def __init__(self, group):
        self.group = group
        super().__init__(f"sexagesimal digit out of range 0..59: {group!r}")


class ExpressionError(ParseError):
    pass


class QuantitySyntaxError(ParseError):
    pass


class UnknownSymbolError(QuantitySyntaxError, LookupError):
    def __init__(self, symbol):
        self.symbol = symbol
        super().__init__(f"unknown symbol: {symbol!r}")


class MalformedCountError(QuantitySyntaxError):
    pass


class TableFormatError(ParseError):
    """Unit-table or log-table document is malformed."""


class DomainError(BabylonError, ValueError):
    exit_code = 3


class NotFloatingLiteralError(DomainError):
    pass


class NonRegularError(DomainError):
    def __init__(self, value, prime):
        self.value = value
        self.prime = prime
        super().__init__(f"{value} is not regular: divisible by {prime}")


class UnknownUnitError(DomainError, LookupError):
    def __init__(self, name):
        self.name = name
        super().__init__(f"unknown unit: {name!r}")


class ValidationError(DomainError):
    def __init__(self, message, *, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class NotInTableError(DomainError, LookupError):
    def __init__(self, value, lower, upper):
        self.value = value
        # nearest (argument, exponent) entries on either side; None past the ends
        self.lower = lower
        self.upper = upper
        super().__init__(
            f"{value} is not in the table (neighbours: {lower}, {upper})"
        )


class UnsupportedArgumentError(DomainError):
    pass


class UnsupportedPrimeError(DomainError):
    def __init__(self, value, prime):
        self.value = value
        self.prime = prime
        super().__init__(f"no logarithm available for prime {prime} (in {value})")


class DegenerateRateError(DomainError):
    pass


class HorizonExceededError(DomainError):
    pass


class ScenarioMismatch(BabylonError):
    exit_code = 4
