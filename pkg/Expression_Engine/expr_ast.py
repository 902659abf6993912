"""
Expression tree nodes and the canonical printer.

Trees are immutable; the printer produces text that re-parses to a
structurally identical tree.
"""

import math
from dataclasses import dataclass
from typing import Iterator, Optional, Union

UNARY_FUNCTIONS = ("sin", "cos", "exp", "sqrt", "log")
BINARY_SYMBOLS = {"add": "+", "sub": "-", "mul": "*", "div": "/"}
NAMED_CONSTANTS = {"pi": math.pi, "e": math.e}


@dataclass(frozen=True)
class Constant:
    """
    A real literal or a named constant.

    Attributes:
        value (float): Numeric value
        name (Optional[str]): 'pi' or 'e' for built-in identifiers, None for literals
    """
    value: float
    name: Optional[str] = None


@dataclass(frozen=True)
class Variable:
    """Coordinate x{index} of the chart."""
    index: int


@dataclass(frozen=True)
class Unary:
    """Negation ('neg') or one of UNARY_FUNCTIONS applied to an operand."""
    op: str
    operand: "Expr"


@dataclass(frozen=True)
class Binary:
    """add, sub, mul or div."""
    op: str
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Power:
    """base ^ exponent with a literal exponent."""
    base: "Expr"
    exponent: float


Expr = Union[Constant, Variable, Unary, Binary, Power]

ZERO = Constant(0.0)
ONE = Constant(1.0)


def _literal(value: float) -> str:
    if not math.isfinite(value):
        raise ValueError(f"cannot print non-finite constant {value}")
    return repr(float(value))


def to_text(expr: Expr) -> str:
    """Print an expression with enough parentheses to re-parse to the same tree."""
    if isinstance(expr, Constant):
        if expr.name is not None:
            return expr.name
        text = _literal(expr.value)
        return f"({text})" if expr.value < 0 or text.startswith("-") else text
    if isinstance(expr, Variable):
        return f"x{expr.index}"
    if isinstance(expr, Unary):
        if expr.op == "neg":
            return f"(-{to_text(expr.operand)})"
        return f"{expr.op}({to_text(expr.operand)})"
    if isinstance(expr, Binary):
        return f"({to_text(expr.left)}{BINARY_SYMBOLS[expr.op]}{to_text(expr.right)})"
    if isinstance(expr, Power):
        return f"({to_text(expr.base)}^{_literal(expr.exponent)})"
    raise TypeError(f"not an expression node: {expr!r}")


def iter_nodes(expr: Expr) -> Iterator[Expr]:
    """Pre-order walk over every node."""
    yield expr
    if isinstance(expr, Unary):
        yield from iter_nodes(expr.operand)
    elif isinstance(expr, Binary):
        yield from iter_nodes(expr.left)
        yield from iter_nodes(expr.right)
    elif isinstance(expr, Power):
        yield from iter_nodes(expr.base)


def max_variable_index(expr: Expr) -> int:
    """Largest coordinate index used, -1 for constant expressions."""
    indices = [node.index for node in iter_nodes(expr) if isinstance(node, Variable)]
    return max(indices, default=-1)


def is_zero(expr: Expr) -> bool:
    return isinstance(expr, Constant) and expr.name is None and expr.value == 0.0


# Construction helpers used when fields are derived from other fields
# (products of components, conformal rescaling). They drop literal zeros and
# ones so derived trees stay small; parsed trees never pass through them.

def add(left: Expr, right: Expr) -> Expr:
    if is_zero(left):
        return right
    if is_zero(right):
        return left
    return Binary("add", left, right)


def sub(left: Expr, right: Expr) -> Expr:
    if is_zero(right):
        return left
    if is_zero(left):
        return neg(right)
    return Binary("sub", left, right)


def neg(operand: Expr) -> Expr:
    if is_zero(operand):
        return ZERO
    return Unary("neg", operand)


def mul(left: Expr, right: Expr) -> Expr:
    if is_zero(left) or is_zero(right):
        return ZERO
    if left == ONE:
        return right
    if right == ONE:
        return left
    return Binary("mul", left, right)


def scale(factor: float, operand: Expr) -> Expr:
    if factor == 0.0:
        return ZERO
    if factor == 1.0:
        return operand
    if factor == -1.0:
        return neg(operand)
    return mul(Constant(float(factor)), operand)


def total(terms) -> Expr:
    result: Expr = ZERO
    for term in terms:
        result = add(result, term)
    return result
