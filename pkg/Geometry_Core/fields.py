"""
Named fields on a chart: first-order jets, covariant derivatives, Lie brackets
and the Nijenhuis tensor.

Layouts: a vector jet is (value[k], jac[k, i] = d_i Z^k); an endomorphism jet
is (value[k, j], grad[k, j, i] = d_i F^k_j); a 1-form jet is
(value[j], grad[j, i] = d_i alpha_j).
"""

import logging
from typing import Optional, Tuple

import numpy as np

from Data_Classes.classes import ChartedManifold
from Expression_Engine.jets import eval_components
from .curvature import christoffel
from .metric import metric_jets

logger = logging.getLogger(__name__)

Jet = Tuple[np.ndarray, np.ndarray]


def vector_jet(M: ChartedManifold, name: str, x) -> Jet:
    values, grads, _ = eval_components(M.vector(name), x)
    return values, grads


def endo_jet(M: ChartedManifold, name: str, x) -> Jet:
    values, grads, _ = eval_components(M.endo(name), x)
    return values, grads


def form_jet(M: ChartedManifold, name: str, x) -> Jet:
    values, grads, _ = eval_components(M.form(name), x)
    return values, grads


def vector_at(M: ChartedManifold, name: str, x) -> np.ndarray:
    return vector_jet(M, name, x)[0]


def endo_at(M: ChartedManifold, name: str, x) -> np.ndarray:
    return endo_jet(M, name, x)[0]


def form_at(M: ChartedManifold, name: str, x) -> np.ndarray:
    return form_jet(M, name, x)[0]


def connection_at(M: ChartedManifold, x) -> np.ndarray:
    """Gamma^k_ij at x without the curvature terms."""
    g, dg, _ = metric_jets(M, x)
    gamma, _ = christoffel(np.linalg.inv(g), dg)
    return gamma


def nabla_vector(jet: Jet, gamma: np.ndarray, X: np.ndarray) -> np.ndarray:
    """(nabla_X Z)^k = X^i (d_i Z^k + Gamma^k_ij Z^j)."""
    value, jac = jet
    return jac @ X + np.einsum("kij,i,j->k", gamma, X, value)


def nabla_endo(jet: Jet, gamma: np.ndarray, X: np.ndarray) -> np.ndarray:
    """(nabla_X F)^k_j = X^i (d_i F^k_j + Gamma^k_im F^m_j - F^k_m Gamma^m_ij)."""
    value, grad = jet
    return (
        np.einsum("kji,i->kj", grad, X)
        + np.einsum("kim,i,mj->kj", gamma, X, value)
        - np.einsum("km,mij,i->kj", value, gamma, X)
    )


def covariant_derivative_vector(M: ChartedManifold, Z: str, X, x,
                                gamma: Optional[np.ndarray] = None) -> np.ndarray:
    """
    Covariant derivative of the named vector field Z along the vector X at x.

    Raises:
        UnknownFieldError: If Z is not a named vector field of M
    """
    jet = vector_jet(M, Z, x)
    if gamma is None:
        gamma = connection_at(M, x)
    return nabla_vector(jet, gamma, np.asarray(X, dtype=float))


def covariant_derivative_endo(M: ChartedManifold, phi: str, X, x,
                              gamma: Optional[np.ndarray] = None) -> np.ndarray:
    """
    Covariant derivative of the named (1,1) field along X, as a matrix [k, j].

    Raises:
        UnknownFieldError: If phi is not a named endomorphism of M
    """
    jet = endo_jet(M, phi, x)
    if gamma is None:
        gamma = connection_at(M, x)
    return nabla_endo(jet, gamma, np.asarray(X, dtype=float))


def bracket_jets(A: Jet, B: Jet) -> np.ndarray:
    """[A, B]^k = A^i d_i B^k - B^i d_i A^k."""
    return B[1] @ A[0] - A[1] @ B[0]


def apply_endo_jet(F: Jet, X: Jet) -> Jet:
    """Jet of the vector field F X."""
    F_value, F_grad = F
    X_value, X_jac = X
    return F_value @ X_value, np.einsum("kji,j->ki", F_grad, X_value) + F_value @ X_jac


def nijenhuis_jets(F: Jet, X: Jet, Y: Jet) -> np.ndarray:
    """N(X,Y) = F^2[X,Y] + [FX,FY] - F[FX,Y] - F[X,FY]."""
    F_value = F[0]
    FX = apply_endo_jet(F, X)
    FY = apply_endo_jet(F, Y)
    return (
        F_value @ (F_value @ bracket_jets(X, Y))
        + bracket_jets(FX, FY)
        - F_value @ bracket_jets(FX, Y)
        - F_value @ bracket_jets(X, FY)
    )


def lie_bracket(M: ChartedManifold, X: str, Y: str, x) -> np.ndarray:
    """
    Lie bracket of two named vector fields at x.

    Raises:
        UnknownFieldError: If either field is missing
    """
    return bracket_jets(vector_jet(M, X, x), vector_jet(M, Y, x))


def nijenhuis(M: ChartedManifold, F: str, X: str, Y: str, x) -> np.ndarray:
    """
    Nijenhuis tensor of the named (1,1) field F on the named fields X, Y.

    Raises:
        UnknownFieldError: If any field is missing
    """
    return nijenhuis_jets(endo_jet(M, F, x), vector_jet(M, X, x), vector_jet(M, Y, x))
