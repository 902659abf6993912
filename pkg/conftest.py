"""
Shared fixtures: zoo entries built once per session, a small sample count
for the slower suites, and a brute-force curvature oracle that uses only
metric values and finite differences.
"""

import numpy as np
import pytest

from Expression_Engine.jets import eval_components
from Zoo import builtin

FAST_SAMPLES = 12


@pytest.fixture(scope="session")
def fast_samples() -> int:
    return FAST_SAMPLES


@pytest.fixture(scope="session")
def zoo():
    """Accessor for builtins; entries are cached by the registry."""
    return builtin


@pytest.fixture(scope="session")
def s3_x_s1():
    return builtin("s3_x_s1").structure


@pytest.fixture(scope="session")
def s3_x_s3():
    return builtin("s3_x_s3").structure


@pytest.fixture(scope="session")
def flat_pair4():
    return builtin("flat_pair4").structure


def _metric_values(M, x) -> np.ndarray:
    return eval_components(M.metric, x)[0]


def _metric_derivative(M, x, h: float) -> np.ndarray:
    """dg[a, b, c] = d_c g_ab by central differences of metric values."""
    n = M.dim
    dg = np.zeros((n, n, n))
    for c in range(n):
        step = np.zeros(n)
        step[c] = h
        dg[:, :, c] = (_metric_values(M, x + step) - _metric_values(M, x - step)) / (2.0 * h)
    return dg


def _christoffel_loops(M, x, h: float) -> np.ndarray:
    n = M.dim
    g_inv = np.linalg.inv(_metric_values(M, x))
    dg = _metric_derivative(M, x, h)
    gamma = np.zeros((n, n, n))
    for k in range(n):
        for i in range(n):
            for j in range(n):
                total = 0.0
                for l in range(n):
                    total += 0.5 * g_inv[k, l] * (dg[l, j, i] + dg[l, i, j] - dg[i, j, l])
                gamma[k, i, j] = total
    return gamma


def brute_force_riemann(M, x, h_metric: float = 1e-6, h_gamma: float = 1e-4) -> np.ndarray:
    """
    R^l_ijk of R(d_i, d_j) d_k by explicit loops:
    d_i G^l_jk - d_j G^l_ik + G^l_im G^m_jk - G^l_jm G^m_ik.
    """
    x = np.asarray(x, dtype=float)
    n = M.dim
    gamma = _christoffel_loops(M, x, h_metric)
    dgamma = np.zeros((n, n, n, n))
    for m in range(n):
        step = np.zeros(n)
        step[m] = h_gamma
        dgamma[..., m] = (_christoffel_loops(M, x + step, h_metric)
                          - _christoffel_loops(M, x - step, h_metric)) / (2.0 * h_gamma)
    R = np.zeros((n, n, n, n))
    for l in range(n):
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    value = dgamma[l, j, k, i] - dgamma[l, i, k, j]
                    for m in range(n):
                        value += gamma[l, i, m] * gamma[m, j, k] - gamma[l, j, m] * gamma[m, i, k]
                    R[l, i, j, k] = value
    return R


@pytest.fixture(scope="session")
def riemann_oracle():
    return brute_force_riemann
