"""Arithmetic over sexagesimal literals.

Operands are literals such as ``7;30`` or ``5,20,0,0``; operators are
``+ - * / ^`` with ``·`` and ``×`` accepted for ``*``.  ``^`` binds tightest,
then ``* /``, then ``+ -``; every tier is left-associative, so ``2^3^2`` is
64.  Exponents must evaluate to integers.

    >>> evaluate("7;30 * 5,20,0,0")
    Fraction(8640000, 1)
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import ExpressionError
from .sexagesimal import div, parse_sex, literal_value, pow_int

__all__ = ["evaluate", "tokenize"]

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:\s*,\s*\d+)*(?:\s*;\s*\d+(?:\s*,\s*\d+)*)?)|(?P<op>[-+*/^()·×−]))"
)
_OP_ALIASES = {"·": "*", "×": "*", "−": "-"}


def tokenize(text: str) -> list[tuple[str, object]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ExpressionError(f"unexpected {text[pos:].strip()[:10]!r} at column {pos + 1}")
        if m.group("num") is not None:
            literal = parse_sex(re.sub(r"\s+", "", m.group("num")))
            tokens.append(("num", literal_value(literal)))
        else:
            op = m.group("op")
            tokens.append(("op", _OP_ALIASES.get(op, op)))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take_op(self, *ops):
        kind, value = self.peek()
        if kind == "op" and value in ops:
            self.i += 1
            return value
        return None

    def expr(self):
        value = self.term()
        while op := self.take_op("+", "-"):
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while op := self.take_op("*", "/"):
            rhs = self.unary()
            value = value * rhs if op == "*" else div(value, rhs)
        return value

    def unary(self):
        if op := self.take_op("+", "-"):
            value = self.unary()
            return -value if op == "-" else value
        return self.power()

    def power(self):
        value = self.atom()
        while self.take_op("^"):
            sign = 1
            while op := self.take_op("+", "-"):
                sign = -sign if op == "-" else sign
            exponent = sign * self.atom()
            if exponent.denominator != 1:
                raise ExpressionError(f"exponent must be an integer, got {exponent}")
            value = pow_int(value, int(exponent))
        return value

    def atom(self):
        kind, value = self.peek()
        if kind == "num":
            self.i += 1
            return value
        if self.take_op("("):
            inner = self.expr()
            if not self.take_op(")"):
                raise ExpressionError("missing closing parenthesis")
            return inner
        if kind is None:
            raise ExpressionError("expression ends where an operand was expected")
        raise ExpressionError(f"expected an operand, found {value!r}")


def evaluate(text: str) -> Fraction:
    """Evaluate ``text`` exactly; raises :class:`ExpressionError` on bad syntax."""
    tokens = tokenize(text)
    if not tokens:
        raise ExpressionError("empty expression")
    parser = _Parser(tokens)
    value = parser.expr()
    if parser.i != len(tokens):
        raise ExpressionError(f"unexpected {parser.peek()[1]!r} after complete expression")
    return value
