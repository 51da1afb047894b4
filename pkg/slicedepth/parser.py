"""Parser for the textual polynomial form, e.g. 2/3*x[1,1]^2 - x[1,2]*x[2,1]."""

from __future__ import annotations

from dataclasses import dataclass
import logging
import re

from .const import MAX_EXPONENT
from .exceptions import PolynomialSyntaxError, UnknownVariableError
from .poly import (
    GREVLEX,
    ONE,
    RATIONALS,
    Field,
    Monomial,
    MonomialOrder,
    Polynomial,
    Scalar,
    VarIndex,
    rational,
)
from .slicefamily import Shape

_LOGGER = logging.getLogger(__name__)

TOKEN_PATTERN = re.compile(
    r"(?P<number>\d+)|(?P<var>x)|(?P<op>[\[\],^*/+-])|(?P<space>[ \t\r]+)|(?P<newline>\n)"
)


@dataclass(frozen=True)
class Token:
    """A lexical token with its position."""

    kind: str
    text: str
    line: int
    column: int


def tokenize(source: str) -> list[Token]:
    """Split source into tokens, tracking line and column."""
    tokens = []
    line, line_start, pos = 1, 0, 0
    while pos < len(source):
        match = TOKEN_PATTERN.match(source, pos)
        if match is None:
            raise PolynomialSyntaxError(
                f"Unexpected character {source[pos]!r}", line, pos - line_start + 1
            )
        kind = match.lastgroup
        if kind == "newline":
            line += 1
            line_start = match.end()
        elif kind != "space":
            text = match.group()
            tokens.append(
                Token(text if kind == "op" else kind, text, line, pos - line_start + 1)
            )
        pos = match.end()
    tokens.append(Token("end", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(
        self, source: str, shape: Shape | None, field: Field, order: MonomialOrder
    ) -> None:
        self._tokens = tokenize(source)
        self._pos = 0
        self._shape = shape
        self._field = field
        self._order = order
        self._dimension: int | None = shape.directions if shape else None

    @property
    def _peek(self) -> Token:
        return self._tokens[self._pos]

    def _next(self) -> Token:
        token = self._tokens[self._pos]
        self._pos += 1
        return token

    def _expect(self, kind: str) -> Token:
        token = self._next()
        if token.kind != kind:
            found = token.text or "end of input"
            raise PolynomialSyntaxError(
                f"Expected {kind!r}, found {found!r}", token.line, token.column
            )
        return token

    def _integer(self) -> tuple[int, Token]:
        token = self._expect("number")
        return int(token.text), token

    def parse(self) -> Polynomial:
        terms: list[tuple[Monomial, Scalar]] = []
        negative = False
        if self._peek.kind in ("+", "-"):
            negative = self._next().kind == "-"
        terms.append(self._term(negative))
        while self._peek.kind in ("+", "-"):
            negative = self._next().kind == "-"
            terms.append(self._term(negative))
        token = self._peek
        if token.kind != "end":
            raise PolynomialSyntaxError(
                f"Unexpected {token.text!r}", token.line, token.column
            )
        return Polynomial(terms, self._field, self._order)

    def _term(self, negative: bool) -> tuple[Monomial, Scalar]:
        coeff: Scalar = self._field.one
        if self._peek.kind == "number":
            coeff = self._coefficient()
            if self._peek.kind != "*":
                return ONE, -coeff if negative else coeff
            self._next()
        mono = self._power()
        while self._peek.kind == "*":
            self._next()
            mono = mono * self._power()
        return mono, -coeff if negative else coeff

    def _coefficient(self) -> Scalar:
        numerator, _ = self._integer()
        denominator = 1
        if self._peek.kind == "/":
            self._next()
            denominator, token = self._integer()
            try:
                return rational(self._field, numerator, denominator)
            except ZeroDivisionError as err:
                raise PolynomialSyntaxError(str(err), token.line, token.column) from err
        return self._field.convert(numerator)

    def _power(self) -> Monomial:
        var, _ = self._variable()
        exponent = 1
        if self._peek.kind == "^":
            self._next()
            exponent, token = self._integer()
            if exponent > MAX_EXPONENT:
                raise PolynomialSyntaxError(
                    f"Exponent {exponent} exceeds {MAX_EXPONENT}", token.line, token.column
                )
        return Monomial.variable(var, exponent)

    def _variable(self) -> tuple[VarIndex, Token]:
        start = self._expect("var")
        self._expect("[")
        index = [self._integer()[0]]
        while self._peek.kind == ",":
            self._next()
            index.append(self._integer()[0])
        self._expect("]")
        nu = tuple(index)
        if self._dimension is None:
            self._dimension = len(nu)
        if len(nu) != self._dimension or any(a < 1 for a in nu):
            raise UnknownVariableError(
                f"Unknown variable x[{','.join(map(str, nu))}]", start.line, start.column
            )
        if self._shape is not None and not self._shape.contains(nu):
            raise UnknownVariableError(
                f"x[{','.join(map(str, nu))}] is outside shape {self._shape}",
                start.line,
                start.column,
            )
        return nu, start


def parse_polynomial(
    source: str,
    shape: Shape | None = None,
    field: Field = RATIONALS,
    order: MonomialOrder = GREVLEX,
) -> Polynomial:
    """Parse a polynomial, checking variables against shape when given."""
    return _Parser(source, shape, field, order).parse()


def parse_monomial(source: str, shape: Shape | None = None) -> Monomial:
    """Parse a single monomial with coefficient 1."""
    f = parse_polynomial(source, shape)
    if len(f) != 1 or f.leading_coefficient != RATIONALS.one:
        raise PolynomialSyntaxError(f"{source!r} is not a monomial")
    return f.leading_monomial
