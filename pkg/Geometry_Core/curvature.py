"""
Levi-Civita connection and curvature on one chart.

Sign convention: R(X, Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z,
so the unit sphere has sectional curvature +1.
"""

import logging
from typing import Tuple

import numpy as np

from Data_Classes.classes import ChartedManifold, CurvatureBundle
from Data_Classes.errors import DegeneratePlaneError
from .metric import check_spd, metric_jets, orthonormal_frame

logger = logging.getLogger(__name__)

PLANE_TOL = 1e-10


def christoffel(g_inv: np.ndarray, dg: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    Christoffel symbols from the metric derivative.

    Returns:
        (gamma, gamma_low) with gamma[k, i, j] = Gamma^k_ij and
        gamma_low[l, i, j] = Gamma_lij = 1/2 (d_i g_lj + d_j g_li - d_l g_ij)
    """
    gamma_low = 0.5 * (
        np.einsum("lji->lij", dg) + np.einsum("lij->lij", dg) - np.einsum("ijl->lij", dg)
    )
    return np.einsum("kl,lij->kij", g_inv, gamma_low), gamma_low


def christoffel_derivative(g_inv: np.ndarray, dg: np.ndarray, ddg: np.ndarray,
                           gamma_low: np.ndarray) -> np.ndarray:
    """dgamma[k, i, j, m] = d_m Gamma^k_ij."""
    dgamma_low = 0.5 * (
        np.einsum("ljim->lijm", ddg) + np.einsum("lijm->lijm", ddg) - np.einsum("ijlm->lijm", ddg)
    )
    dg_inv = -np.einsum("ka,abm,bl->klm", g_inv, dg, g_inv)
    return np.einsum("klm,lij->kijm", dg_inv, gamma_low) + np.einsum("kl,lijm->kijm", g_inv, dgamma_low)


def riemann_from_christoffel(gamma: np.ndarray, dgamma: np.ndarray) -> np.ndarray:
    """R^l_ijk = d_i G^l_jk - d_j G^l_ik + G^l_im G^m_jk - G^l_jm G^m_ik, layout [l, i, j, k]."""
    return (
        np.einsum("ljki->lijk", dgamma)
        - np.einsum("likj->lijk", dgamma)
        + np.einsum("lim,mjk->lijk", gamma, gamma)
        - np.einsum("ljm,mik->lijk", gamma, gamma)
    )


def curvature_at(M: ChartedManifold, x) -> CurvatureBundle:
    """
    Evaluate connection and curvature at a point.

    Args:
        M (ChartedManifold): Manifold
        x: Chart point

    Returns:
        CurvatureBundle: Gamma, R in both valences, Ric, Q and scal

    Raises:
        NotSPDError: Metric not positive definite at x
        DomainError: A metric component cannot be evaluated at x
    """
    point = np.asarray(x, dtype=float)
    g, dg, ddg = metric_jets(M, point)
    check_spd(g, point)
    g_inv = np.linalg.inv(g)
    gamma, gamma_low = christoffel(g_inv, dg)
    dgamma = christoffel_derivative(g_inv, dg, ddg, gamma_low)
    riemann_ud = riemann_from_christoffel(gamma, dgamma)
    riemann_dddd = np.einsum("mijk,ml->ijkl", riemann_ud, g)
    ricci = np.einsum("kkij->ij", riemann_ud)
    q_operator = g_inv @ ricci
    return CurvatureBundle(
        point=point,
        g=g,
        g_inv=g_inv,
        gamma=gamma,
        riemann_ud=riemann_ud,
        riemann_dddd=riemann_dddd,
        ricci=ricci,
        q_operator=q_operator,
        scal=float(np.trace(q_operator)),
    )


def curvature_operator(bundle: CurvatureBundle, X, Y, W) -> np.ndarray:
    """The vector R(X, Y)W."""
    return np.einsum("lijk,i,j,k->l", bundle.riemann_ud, X, Y, W)


def sectional(bundle: CurvatureBundle, g: np.ndarray, X, Y) -> float:
    """
    Sectional curvature of the plane spanned by X and Y.

    Raises:
        DegeneratePlaneError: If the Gram determinant is at most 1e-10
    """
    X = np.asarray(X, dtype=float)
    Y = np.asarray(Y, dtype=float)
    gram = float((X @ g @ X) * (Y @ g @ Y) - (X @ g @ Y) ** 2)
    if gram <= PLANE_TOL:
        raise DegeneratePlaneError(gram)
    numerator = float(np.einsum("ijkl,i,j,k,l->", bundle.riemann_dddd, X, Y, Y, X))
    return numerator / gram


def ricci_eigenvalues(bundle: CurvatureBundle) -> np.ndarray:
    """Eigenvalues of the Ricci operator, ascending."""
    frame, _ = orthonormal_frame(bundle.g)
    local = frame.T @ bundle.ricci @ frame
    return np.linalg.eigvalsh(0.5 * (local + local.T))


def symmetry_residuals(bundle: CurvatureBundle) -> dict:
    """Deviation from the algebraic curvature symmetries and the first Bianchi identity."""
    R = bundle.riemann_dddd
    gamma = bundle.gamma
    return {
        "gamma symmetric": float(np.max(np.abs(gamma - np.einsum("kij->kji", gamma)))),
        "R_ijkl + R_jikl": float(np.max(np.abs(R + np.einsum("jikl->ijkl", R)))),
        "R_ijkl + R_ijlk": float(np.max(np.abs(R + np.einsum("ijlk->ijkl", R)))),
        "R_ijkl - R_klij": float(np.max(np.abs(R - np.einsum("klij->ijkl", R)))),
        "first Bianchi": float(np.max(np.abs(
            R + np.einsum("jkil->ijkl", R) + np.einsum("kijl->ijkl", R)
        ))),
        "scal - trace Q": abs(bundle.scal - float(np.trace(bundle.q_operator))),
    }


def second_bianchi_residual(M: ChartedManifold, x, h: float = 1e-4) -> float:
    """
    Largest component of the cyclic sum of nabla R over its derivative and first two slots.

    The coordinate derivative of R is taken by central differences of
    curvature_at with step h; Christoffel terms are exact.
    """
    point = np.asarray(x, dtype=float)
    n = M.dim
    centre = curvature_at(M, point)
    R = centre.riemann_ud
    G = centre.gamma
    dR = np.empty((n,) * 5)
    for m in range(n):
        step = np.zeros(n)
        step[m] = h
        forward = curvature_at(M, point + step).riemann_ud
        backward = curvature_at(M, point - step).riemann_ud
        dR[m] = (forward - backward) / (2.0 * h)
    # nabla[m, l, i, j, k] = (nabla_m R)^l_ijk
    nabla = (
        dR
        + np.einsum("lmp,pijk->mlijk", G, R)
        - np.einsum("pmi,lpjk->mlijk", G, R)
        - np.einsum("pmj,lipk->mlijk", G, R)
        - np.einsum("pmk,lijp->mlijk", G, R)
    )
    # cyclic in (m, i, j)
    cyclic = nabla + np.einsum("iljmk->mlijk", nabla) + np.einsum("jlmik->mlijk", nabla)
    return float(np.max(np.abs(cyclic)))
