"""
Exterior calculus on low-degree forms at a point.

A form is stored sparsely as {(i1, ..., ik): coefficient} on the basis
dx^i1 ^ ... ^ dx^ik with i1 < ... < ik. A 2-form evaluates on vectors with
the 1/k! convention: omega(X, Y) = 1/2 X^T W Y where W is the antisymmetric
coefficient matrix, so d(x0 dx1) = dx0 ^ dx1 and
d alpha(X, Y) = 1/2 (X alpha(Y) - Y alpha(X) - alpha([X, Y])).
"""

import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, Sequence, Tuple

import numpy as np

from Data_Classes.classes import ChartedManifold, TensorValue
from Data_Classes.errors import DegreeMismatchError
from Expression_Engine.jets import eval_components

logger = logging.getLogger(__name__)

WEDGE_TOL = 1e-10


@dataclass(frozen=True)
class ExteriorForm:
    """
    A k-form at one point.

    Attributes:
        degree (int): k
        dim (int): Chart dimension
        coefficients (Dict[Tuple[int, ...], float]): Sparse coefficients on sorted index tuples
    """
    degree: int
    dim: int
    coefficients: Dict[Tuple[int, ...], float] = field(default_factory=dict)

    @classmethod
    def from_covector(cls, values: np.ndarray) -> "ExteriorForm":
        return cls(1, len(values), {(i,): float(v) for i, v in enumerate(values) if v != 0.0})

    @classmethod
    def from_matrix(cls, W: np.ndarray) -> "ExteriorForm":
        n = len(W)
        coeffs = {(i, j): float(W[i, j]) for i in range(n) for j in range(i + 1, n) if W[i, j] != 0.0}
        return cls(2, n, coeffs)

    def max_abs(self) -> float:
        return max((abs(c) for c in self.coefficients.values()), default=0.0)

    def __xor__(self, other: "ExteriorForm") -> "ExteriorForm":
        return wedge(self, other)


def _merge_sign(left: Tuple[int, ...], right: Tuple[int, ...]) -> int:
    """Sign of the permutation sorting left + right (both already sorted)."""
    inversions = sum(1 for a in left for b in right if a > b)
    return -1 if inversions % 2 else 1


def wedge(a: ExteriorForm, b: ExteriorForm) -> ExteriorForm:
    """Exterior product of two forms at the same point."""
    if a.dim != b.dim:
        raise DegreeMismatchError(f"forms live in dimensions {a.dim} and {b.dim}")
    coeffs: Dict[Tuple[int, ...], float] = {}
    for left, ca in a.coefficients.items():
        for right, cb in b.coefficients.items():
            if set(left) & set(right):
                continue
            key = tuple(sorted(left + right))
            coeffs[key] = coeffs.get(key, 0.0) + _merge_sign(left, right) * ca * cb
    return ExteriorForm(a.degree + b.degree, a.dim, coeffs)


def unit_form(dim: int) -> ExteriorForm:
    """The constant 0-form 1."""
    return ExteriorForm(0, dim, {(): 1.0})


def wedge_power(form: ExteriorForm, power: int) -> ExteriorForm:
    result = unit_form(form.dim)
    for _ in range(power):
        result = wedge(result, form)
    return result


def wedge_power_nonzero(factors: Sequence[Tuple[ExteriorForm, int]],
                        tol: float = WEDGE_TOL) -> Tuple[bool, float]:
    """
    Evaluate a wedge of form powers against the coordinate volume element.

    Args:
        factors: (form, power) pairs, all evaluated at the same point
        tol: Threshold below which the top form counts as zero

    Returns:
        Tuple[bool, float]: (is_nonzero, coefficient on dx^0 ^ ... ^ dx^{n-1})

    Raises:
        DegreeMismatchError: If the total degree is not the chart dimension
    """
    if not factors:
        raise DegreeMismatchError("no forms given")
    dim = factors[0][0].dim
    total_degree = sum(form.degree * power for form, power in factors)
    if total_degree != dim:
        raise DegreeMismatchError(f"total degree {total_degree} does not match dimension {dim}")
    result = unit_form(dim)
    for form, power in factors:
        result = wedge(result, wedge_power(form, power))
    magnitude = result.coefficients.get(tuple(range(dim)), 0.0)
    return abs(magnitude) > tol, magnitude


def one_form_at(M: ChartedManifold, name: str, x) -> ExteriorForm:
    values, _, _ = eval_components(M.form(name), x)
    return ExteriorForm.from_covector(values)


def exterior_derivative_matrix(M: ChartedManifold, name: str, x) -> np.ndarray:
    """W[i, j] = d_i alpha_j - d_j alpha_i, the coefficient matrix of d alpha."""
    _, grads, _ = eval_components(M.form(name), x)
    # grads[j, i] = d_i alpha_j
    return grads.T - grads


def exterior_derivative_1form(M: ChartedManifold, name: str, x) -> TensorValue:
    """
    Exterior derivative of a named 1-form as a (0,2) tensor of coefficients.

    Raises:
        UnknownFieldError: If the form is not named on M
    """
    point = np.asarray(x, dtype=float)
    return TensorValue((0, 2), exterior_derivative_matrix(M, name, point), point)


def two_form_value(W: np.ndarray, X, Y) -> float:
    """omega(X, Y) = 1/2 X^T W Y."""
    return 0.5 * float(np.asarray(X) @ W @ np.asarray(Y))


def dd_residual(M: ChartedManifold, name: str, x) -> float:
    """Largest coefficient of d(d alpha), from exact second derivatives."""
    _, _, hessians = eval_components(M.form(name), x)
    # dW[i, j, k] = d_k W_ij = d_k d_i alpha_j - d_k d_j alpha_i
    dW = np.einsum("jik->ijk", hessians) - np.einsum("ijk->ijk", hessians)
    n = M.dim
    worst = 0.0
    for i, j, k in itertools.combinations(range(n), 3):
        worst = max(worst, abs(dW[j, k, i] + dW[k, i, j] + dW[i, j, k]))
    return float(worst)
