"""
Metric evaluation, positivity check and orthonormal frames.
"""

import logging
from typing import Tuple

import numpy as np

from Data_Classes.classes import ChartedManifold
from Data_Classes.errors import NotSPDError
from Expression_Engine.jets import eval_components

logger = logging.getLogger(__name__)

SPD_TOL = 1e-12


def _upper_triangle(M: ChartedManifold):
    n = M.dim
    return [(i, j) for i in range(n) for j in range(i, n)]


def metric_jets(M: ChartedManifold, x) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Metric with first and second coordinate derivatives.

    Returns:
        (g, dg, ddg) with dg[a, b, c] = d_c g_ab and ddg[a, b, c, d] = d_c d_d g_ab.
        Only the upper triangle is evaluated, so all three are exactly symmetric in (a, b).
    """
    n = M.dim
    pairs = _upper_triangle(M)
    values, grads, hessians = eval_components([M.metric[i][j] for i, j in pairs], x)
    g = np.empty((n, n))
    dg = np.empty((n, n, n))
    ddg = np.empty((n, n, n, n))
    for k, (i, j) in enumerate(pairs):
        g[i, j] = g[j, i] = values[k]
        dg[i, j] = dg[j, i] = grads[k]
        ddg[i, j] = ddg[j, i] = hessians[k]
    return g, dg, ddg


def check_spd(g: np.ndarray, x) -> None:
    """
    Leading-principal-minor test.

    Raises:
        NotSPDError: First minor that is not above SPD_TOL
    """
    for k in range(1, len(g) + 1):
        minor = float(np.linalg.det(g[:k, :k]))
        if not minor > SPD_TOL:
            raise NotSPDError(x, k, minor)


def metric_at(M: ChartedManifold, x) -> Tuple[np.ndarray, np.ndarray]:
    """
    Evaluate the metric and its inverse at a point.

    Args:
        M (ChartedManifold): Manifold
        x: Chart point

    Returns:
        Tuple[np.ndarray, np.ndarray]: (g, g_inv)

    Raises:
        NotSPDError: If g is not positive definite at x
    """
    n = M.dim
    pairs = _upper_triangle(M)
    values, _, _ = eval_components([M.metric[i][j] for i, j in pairs], x)
    g = np.empty((n, n))
    for k, (i, j) in enumerate(pairs):
        g[i, j] = g[j, i] = values[k]
    check_spd(g, x)
    return g, np.linalg.inv(g)


def orthonormal_frame(g: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    Gram-Schmidt of the coordinate frame in coordinate order.

    Returns:
        (E, E_inv): columns of E are the g-orthonormal frame vectors; E_inv maps
        coordinate components to frame components. E is upper triangular.
    """
    lower = np.linalg.cholesky(g)
    frame = np.linalg.inv(lower).T
    return frame, lower.T


def vector_norm(g: np.ndarray, v: np.ndarray) -> float:
    return float(np.sqrt(max(float(v @ g @ v), 0.0)))


def endo_frame_max(F: np.ndarray, frame: np.ndarray, coframe: np.ndarray) -> float:
    """Largest component of a (1,1) tensor in the orthonormal frame."""
    return float(np.max(np.abs(coframe @ F @ frame)))


def covector_frame_max(c: np.ndarray, frame: np.ndarray) -> float:
    return float(np.max(np.abs(c @ frame)))


def bilinear_frame_eigmax(B: np.ndarray, frame: np.ndarray) -> float:
    """Largest |eigenvalue| of a symmetric bilinear form in the orthonormal frame."""
    local = frame.T @ B @ frame
    local = 0.5 * (local + local.T)
    return float(np.max(np.abs(np.linalg.eigvalsh(local))))


def tensor13_frame(T: np.ndarray, frame: np.ndarray, coframe: np.ndarray) -> np.ndarray:
    """Components of a (1,3) tensor T[l, i, j, k] in the orthonormal frame."""
    return np.einsum("al,lijk,ib,jc,kd->abcd", coframe, T, frame, frame, frame, optimize=True)


def g_orthonormalize(vectors: np.ndarray, g: np.ndarray, tol: float = 1e-8) -> np.ndarray:
    """
    Gram-Schmidt of the columns of `vectors` with respect to g.

    Columns whose remainder has g-norm at most tol are dropped.
    """
    basis = []
    for v in np.asarray(vectors, dtype=float).T:
        w = v.copy()
        for e in basis:
            w = w - (e @ g @ w) * e
        norm = np.sqrt(max(float(w @ g @ w), 0.0))
        if norm > tol:
            basis.append(w / norm)
    if not basis:
        return np.zeros((len(g), 0))
    return np.stack(basis, axis=1)
