"""
Recursive-descent parser for closed-form chart expressions.

Grammar (lowest to highest precedence)::

    expr     := term (('+' | '-') term)*
    term     := unary (('*' | '/') unary)*
    unary    := ('-' | '+') unary | power
    power    := atom ('^' exponent)*
    exponent := ['+' | '-'] NUMBER | '(' ['+' | '-'] NUMBER ')'
    atom     := NUMBER | 'pi' | 'e' | x<k> | FUNC '(' expr ')' | '(' expr ')'

FUNC is one of sin, cos, exp, sqrt, log. Coordinates are x0 .. x{dim-1}.
"""

import logging
import re
from dataclasses import dataclass
from typing import List

from Data_Classes.errors import ExprSyntaxError, IndexOutOfRangeError, UnknownSymbolError
from .expr_ast import (
    NAMED_CONSTANTS,
    UNARY_FUNCTIONS,
    Binary,
    Constant,
    Expr,
    Power,
    Unary,
    Variable,
)

logger = logging.getLogger(__name__)

_TOKEN_PATTERN = re.compile(
    r"\s*(?:"
    r"(?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^(),])"
    r")"
)
_COORDINATE = re.compile(r"x(\d+)$")


@dataclass(frozen=True)
class Token:
    kind: str  # number, ident, op, end
    text: str
    position: int


def tokenize(text: str) -> List[Token]:
    """Split expression text into tokens, ending with an 'end' token."""
    tokens: List[Token] = []
    position = 0
    while position < len(text):
        if text[position:].strip() == "":
            break
        match = _TOKEN_PATTERN.match(text, position)
        if match is None or match.lastgroup is None:
            offset = position + (len(text[position:]) - len(text[position:].lstrip()))
            raise ExprSyntaxError(offset, f"unexpected character '{text[offset]}'")
        kind = match.lastgroup
        tokens.append(Token(kind, match.group(kind), match.start(kind)))
        position = match.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


class _Parser:
    """Single-use parser over a token list."""

    def __init__(self, text: str, dim: int):
        self.text = text
        self.dim = dim
        self.tokens = tokenize(text)
        self.index = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def _advance(self) -> Token:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def _error(self, message: str) -> ExprSyntaxError:
        # Truncated input is reported at the dangling token, not past the end.
        token = self.current
        if token.kind == "end" and self.index > 0:
            return ExprSyntaxError(self.tokens[self.index - 1].position, message)
        return ExprSyntaxError(token.position, message)

    def _is_op(self, *symbols: str) -> bool:
        return self.current.kind == "op" and self.current.text in symbols

    def _expect_op(self, symbol: str) -> None:
        if not self._is_op(symbol):
            raise self._error(f"expected '{symbol}'")
        self._advance()

    def parse(self) -> Expr:
        if self.current.kind == "end":
            raise ExprSyntaxError(0, "empty expression")
        expr = self._expr()
        if self.current.kind != "end":
            raise self._error(f"unexpected token '{self.current.text}'")
        return expr

    def _expr(self) -> Expr:
        left = self._term()
        while self._is_op("+", "-"):
            op = "add" if self._advance().text == "+" else "sub"
            left = Binary(op, left, self._term())
        return left

    def _term(self) -> Expr:
        left = self._unary()
        while self._is_op("*", "/"):
            op = "mul" if self._advance().text == "*" else "div"
            left = Binary(op, left, self._unary())
        return left

    def _unary(self) -> Expr:
        if self._is_op("+"):
            self._advance()
            return self._unary()
        if self._is_op("-"):
            self._advance()
            operand = self._unary()
            if isinstance(operand, Constant) and operand.name is None:
                return Constant(-operand.value)
            return Unary("neg", operand)
        return self._power()

    def _power(self) -> Expr:
        base = self._atom()
        while self._is_op("^"):
            self._advance()
            base = Power(base, self._exponent())
        return base

    def _signed_number(self) -> float:
        sign = 1.0
        if self._is_op("+", "-"):
            sign = -1.0 if self._advance().text == "-" else 1.0
        if self.current.kind != "number":
            raise self._error("exponent must be a numeric literal")
        return sign * float(self._advance().text)

    def _exponent(self) -> float:
        if self._is_op("("):
            self._advance()
            value = self._signed_number()
            self._expect_op(")")
            return value
        return self._signed_number()

    def _atom(self) -> Expr:
        token = self.current
        if token.kind == "number":
            self._advance()
            return Constant(float(token.text))
        if token.kind == "ident":
            return self._identifier()
        if self._is_op("("):
            self._advance()
            inner = self._expr()
            self._expect_op(")")
            return inner
        if token.kind == "end":
            raise self._error("unexpected end of expression")
        raise self._error(f"unexpected token '{token.text}'")

    def _identifier(self) -> Expr:
        token = self._advance()
        name = token.text
        if name in UNARY_FUNCTIONS:
            if not self._is_op("("):
                raise self._error(f"expected '(' after function '{name}'")
            self._advance()
            argument = self._expr()
            self._expect_op(")")
            return Unary(name, argument)
        if name in NAMED_CONSTANTS:
            return Constant(NAMED_CONSTANTS[name], name)
        coordinate = _COORDINATE.match(name)
        if coordinate:
            index = int(coordinate.group(1))
            if index >= self.dim:
                raise IndexOutOfRangeError(index, self.dim, token.position)
            return Variable(index)
        raise UnknownSymbolError(name, token.position)


def parse(text: str, dim: int) -> Expr:
    """
    Parse expression text in chart coordinates x0 .. x{dim-1}.

    Args:
        text (str): Expression source
        dim (int): Chart dimension; coordinates with index >= dim are rejected

    Returns:
        Expr: Root node of the expression tree

    Raises:
        ExprSyntaxError: Malformed input
        UnknownSymbolError: Identifier that is not a coordinate, constant or function
        IndexOutOfRangeError: Coordinate index beyond the chart dimension
    """
    if dim < 1:
        raise ValueError(f"dimension must be positive, got {dim}")
    expr = _Parser(text, dim).parse()
    logger.debug(f"Parsed '{text}' in dimension {dim}")
    return expr
