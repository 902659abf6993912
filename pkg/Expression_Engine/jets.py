"""
Second-order forward-mode jets.

A Jet2 is the truncated Taylor data (value, gradient, Hessian) of a scalar
function at a point. Every rule below builds the Hessian from symmetric
pieces only, so hess[i][j] == hess[j][i] holds exactly.
"""

import math
from dataclasses import dataclass
from typing import Any, Sequence, Tuple

import numpy as np

from Data_Classes.errors import DomainError
from .expr_ast import Binary, Constant, Expr, Power, Unary, Variable, to_text


@dataclass(frozen=True)
class Jet2:
    """
    Value, gradient and Hessian of a scalar at a point.

    Attributes:
        value (float): Function value
        grad (np.ndarray): Gradient, shape (n,)
        hess (np.ndarray): Hessian, shape (n, n), symmetric by construction
    """
    value: float
    grad: np.ndarray
    hess: np.ndarray

    def __post_init__(self):
        self.grad.setflags(write=False)
        self.hess.setflags(write=False)

    @classmethod
    def constant(cls, value: float, dim: int) -> "Jet2":
        return cls(float(value), np.zeros(dim), np.zeros((dim, dim)))

    @classmethod
    def coordinate(cls, index: int, point: np.ndarray) -> "Jet2":
        grad = np.zeros(len(point))
        grad[index] = 1.0
        return cls(float(point[index]), grad, np.zeros((len(point), len(point))))

    @property
    def dim(self) -> int:
        return len(self.grad)

    def __add__(self, other: "Jet2") -> "Jet2":
        return Jet2(self.value + other.value, self.grad + other.grad, self.hess + other.hess)

    def __sub__(self, other: "Jet2") -> "Jet2":
        return Jet2(self.value - other.value, self.grad - other.grad, self.hess - other.hess)

    def __neg__(self) -> "Jet2":
        return Jet2(-self.value, -self.grad, -self.hess)

    def __mul__(self, other: "Jet2") -> "Jet2":
        cross = np.outer(self.grad, other.grad)
        return Jet2(
            self.value * other.value,
            self.value * other.grad + other.value * self.grad,
            self.value * other.hess + other.value * self.hess + (cross + cross.T),
        )

    def compose(self, f: float, df: float, d2f: float) -> "Jet2":
        """Jet of h(u) where u is this jet and (f, df, d2f) are h, h', h'' at u.value."""
        grad = df * self.grad
        hess = df * self.hess
        if d2f != 0.0:
            hess = hess + d2f * np.outer(self.grad, self.grad)
        return Jet2(f, grad, hess)


def _reciprocal(u: Jet2, node: Expr) -> Jet2:
    if u.value == 0.0:
        raise DomainError(to_text(node), "division by zero")
    inv = 1.0 / u.value
    return u.compose(inv, -inv * inv, 2.0 * inv * inv * inv)


def _power(u: Jet2, exponent: float, node: Expr) -> Jet2:
    if exponent == 0.0:
        return Jet2.constant(1.0, u.dim)
    base = u.value
    integral = exponent == int(exponent)
    if base < 0.0 and not integral:
        raise DomainError(to_text(node), "negative base with non-integer exponent")
    if base == 0.0 and exponent < 0.0:
        raise DomainError(to_text(node), "division by zero")
    if base == 0.0 and not integral and exponent < 2.0:
        raise DomainError(to_text(node), "derivative undefined at zero")
    first = exponent
    second = exponent * (exponent - 1.0)
    f = math.pow(base, exponent)
    df = first * math.pow(base, exponent - 1.0) if first != 0.0 else 0.0
    d2f = second * math.pow(base, exponent - 2.0) if second != 0.0 else 0.0
    return u.compose(f, df, d2f)


def _function(name: str, u: Jet2, node: Expr) -> Jet2:
    x = u.value
    if name == "sin":
        s, c = math.sin(x), math.cos(x)
        return u.compose(s, c, -s)
    if name == "cos":
        s, c = math.sin(x), math.cos(x)
        return u.compose(c, -s, -c)
    if name == "exp":
        ex = math.exp(x)
        return u.compose(ex, ex, ex)
    if name == "sqrt":
        if x <= 0.0:
            raise DomainError(to_text(node), "sqrt of non-positive argument")
        r = math.sqrt(x)
        return u.compose(r, 0.5 / r, -0.25 / (r * x))
    if name == "log":
        if x <= 0.0:
            raise DomainError(to_text(node), "log of non-positive argument")
        return u.compose(math.log(x), 1.0 / x, -1.0 / (x * x))
    raise ValueError(f"unknown function '{name}'")


def _evaluate(node: Expr, point: np.ndarray) -> Jet2:
    if isinstance(node, Constant):
        return Jet2.constant(node.value, len(point))
    if isinstance(node, Variable):
        return Jet2.coordinate(node.index, point)
    if isinstance(node, Unary):
        operand = _evaluate(node.operand, point)
        if node.op == "neg":
            return -operand
        return _function(node.op, operand, node)
    if isinstance(node, Binary):
        left = _evaluate(node.left, point)
        right = _evaluate(node.right, point)
        if node.op == "add":
            return left + right
        if node.op == "sub":
            return left - right
        if node.op == "mul":
            return left * right
        if node.op == "div":
            return left * _reciprocal(right, node)
        raise ValueError(f"unknown binary operator '{node.op}'")
    if isinstance(node, Power):
        return _power(_evaluate(node.base, point), node.exponent, node)
    raise TypeError(f"not an expression node: {node!r}")


def eval_jet2(ast: Expr, point: Sequence[float]) -> Jet2:
    """
    Evaluate an expression with exact first and second derivatives.

    Args:
        ast (Expr): Parsed expression
        point (Sequence[float]): Chart point, length = declared dimension

    Returns:
        Jet2: Value, gradient and Hessian at the point

    Raises:
        DomainError: log/sqrt of non-positive values, division by zero
    """
    return _evaluate(ast, np.asarray(point, dtype=float))


def eval_components(components: Any, point: Sequence[float]) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Evaluate a nested tuple of expressions (vector, matrix, ...) at a point.

    Returns:
        Tuple of (values, grads, hessians) with shapes S, S + (n,), S + (n, n)
        where S is the nesting shape of `components`.
    """
    x = np.asarray(point, dtype=float)
    n = len(x)
    flat = list(_flatten(components))
    shape = _nesting_shape(components)
    values = np.empty(len(flat))
    grads = np.empty((len(flat), n))
    hessians = np.empty((len(flat), n, n))
    for k, expr in enumerate(flat):
        jet = _evaluate(expr, x)
        values[k] = jet.value
        grads[k] = jet.grad
        hessians[k] = jet.hess
    return values.reshape(shape), grads.reshape(shape + (n,)), hessians.reshape(shape + (n, n))


def _flatten(components: Any):
    if isinstance(components, (tuple, list)):
        for item in components:
            yield from _flatten(item)
    else:
        yield components


def _nesting_shape(components: Any) -> tuple:
    if isinstance(components, (tuple, list)):
        if not components:
            return (0,)
        return (len(components),) + _nesting_shape(components[0])
    return ()
