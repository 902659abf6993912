"""
Conformal, concircular and quasi-conformal curvature tensors.

All tensors use the (1,3) layout of CurvatureBundle.riemann_ud: T[l, i, j, k]
is the component along d_l of T(d_i, d_j) d_k. For a manifold without a
contact pair the horizontal dimension 2p + 2q is taken as n - 2.
"""

import logging
from typing import Optional, Sequence, Tuple

import numpy as np

from Data_Classes.classes import (
    ContactPairStructure,
    CurvatureBundle,
    QuasiConformalParams,
    Target,
    TensorValue,
    horizontal_dimension,
    manifold_of,
)
from Data_Classes.errors import DegeneratePlaneError, DimensionMismatchError, MissingParamsError
from Data_Classes.reports import CurvatureSummary, EinsteinReport, FlatnessReport
from Geometry_Core.curvature import curvature_at, ricci_eigenvalues, sectional
from Geometry_Core.metric import bilinear_frame_eigmax, orthonormal_frame, tensor13_frame
from utils.sampling import DEFAULT_SAMPLES, DEFAULT_SEED, draw_plan, map_ordered

logger = logging.getLogger(__name__)

TENSORS = ("conformal", "concircular", "quasi")
TOL_FLAT = 1e-7
TOL_EINSTEIN = 1e-7


def pair_type(target: Target) -> Tuple[float, float]:
    """(p, q) of a contact pair, or ((n - 2) / 2, 0) for a plain manifold."""
    if isinstance(target, ContactPairStructure):
        return float(target.p), float(target.q)
    return horizontal_dimension(target) / 2.0, 0.0


def _horizontal(bundle: CurvatureBundle, p: float, q: float) -> float:
    m = 2.0 * p + 2.0 * q
    if not np.isclose(m + 2.0, bundle.dim):
        raise DimensionMismatchError(
            f"type ({p:g}, {q:g}) needs dimension {m + 2:g}, curvature is {bundle.dim}-dimensional"
        )
    return m


def unit_curvature(g: np.ndarray) -> np.ndarray:
    """G[l, i, j, k] = delta^l_i g_jk - delta^l_j g_ik, the curvature of a unit sphere."""
    identity = np.eye(len(g))
    return np.einsum("li,jk->lijk", identity, g) - np.einsum("lj,ik->lijk", identity, g)


def _ricci_terms(bundle: CurvatureBundle, g: np.ndarray) -> np.ndarray:
    """g_ik Q^l_j - g_jk Q^l_i + Ric_ik delta^l_j - Ric_jk delta^l_i."""
    identity = np.eye(len(g))
    Q = bundle.q_operator
    Ric = bundle.ricci
    return (
        np.einsum("ik,lj->lijk", g, Q)
        - np.einsum("jk,li->lijk", g, Q)
        + np.einsum("ik,lj->lijk", Ric, identity)
        - np.einsum("jk,li->lijk", Ric, identity)
    )


def conformal_at(bundle: CurvatureBundle, g: np.ndarray, p: float, q: float) -> TensorValue:
    """
    Conformal curvature tensor
    C = R + scal/((m+1)m) G + (1/m)(g_ik Q^l_j - g_jk Q^l_i + Ric_ik delta^l_j - Ric_jk delta^l_i),
    with m = 2p + 2q.

    Raises:
        DimensionMismatchError: If 2p + 2q + 2 differs from the dimension, or m = 0
    """
    m = _horizontal(bundle, p, q)
    if m <= 0:
        raise DimensionMismatchError("the conformal tensor needs dimension at least 3")
    C = (bundle.riemann_ud
         + bundle.scal / ((m + 1.0) * m) * unit_curvature(g)
         + _ricci_terms(bundle, g) / m)
    return TensorValue((1, 3), C, bundle.point)


def concircular_at(bundle: CurvatureBundle, g: np.ndarray, p: float, q: float) -> TensorValue:
    """W = R - scal/(n(n-1)) G."""
    n = _horizontal(bundle, p, q) + 2.0
    W = bundle.riemann_ud - bundle.scal / (n * (n - 1.0)) * unit_curvature(g)
    return TensorValue((1, 3), W, bundle.point)


def quasi_conformal_at(bundle: CurvatureBundle, g: np.ndarray, p: float, q: float,
                       params: QuasiConformalParams) -> TensorValue:
    """
    C~ = aR + b[Ric_jk delta^l_i - Ric_ik delta^l_j + g_jk Q^l_i - g_ik Q^l_j]
         - (scal/n)[a/(n-1) + 2b] G.

    (1, 0) gives W and (1, -1/m) gives C.
    """
    n = _horizontal(bundle, p, q) + 2.0
    a, b = params.a, params.b
    T = (a * bundle.riemann_ud
         - b * _ricci_terms(bundle, g)
         - bundle.scal / n * (a / (n - 1.0) + 2.0 * b) * unit_curvature(g))
    return TensorValue((1, 3), T, bundle.point)


def tensor_at(bundle: CurvatureBundle, tensor: str, p: float, q: float,
              params: Optional[QuasiConformalParams] = None) -> TensorValue:
    """Dispatch on the tensor name used by the CLI."""
    if tensor == "conformal":
        return conformal_at(bundle, bundle.g, p, q)
    if tensor == "concircular":
        return concircular_at(bundle, bundle.g, p, q)
    if tensor == "quasi":
        if params is None:
            raise MissingParamsError("the quasi-conformal tensor needs parameters a and b")
        return quasi_conformal_at(bundle, bundle.g, p, q, params)
    raise ValueError(f"unknown tensor '{tensor}', expected one of {', '.join(TENSORS)}")


def frame_max(value: TensorValue, g: np.ndarray) -> float:
    """Largest component of a (1,3) tensor in the orthonormal frame of g."""
    frame, coframe = orthonormal_frame(g)
    return float(np.max(np.abs(tensor13_frame(value.components, frame, coframe))))


def einstein_residual_at(bundle: CurvatureBundle, lam: Optional[float] = None) -> float:
    """max |eig(Ric - lam g)| in an orthonormal frame; lam defaults to scal/n."""
    if lam is None:
        lam = bundle.scal / bundle.dim
    frame, _ = orthonormal_frame(bundle.g)
    return bilinear_frame_eigmax(bundle.ricci - lam * bundle.g, frame)


def sample_bundles(target: Target, samples: int, seed: int, workers: int = 1):
    """Curvature bundles at the seeded sample points, in sample order."""
    M = manifold_of(target)
    plan = draw_plan(M.sample_box, samples, seed)
    return map_ordered(lambda x: curvature_at(M, x), list(plan.points), workers, "curvature samples")


def flatness(target: Target, tensor: str, params: Optional[QuasiConformalParams] = None,
             samples: int = DEFAULT_SAMPLES, tol: float = TOL_FLAT, seed: int = DEFAULT_SEED,
             workers: int = 1) -> FlatnessReport:
    """
    Largest orthonormal-frame component of the chosen tensor over samples.

    Raises:
        MissingParamsError: If tensor is "quasi" and params is None
    """
    if tensor == "quasi" and params is None:
        raise MissingParamsError("flatness of the quasi-conformal tensor needs parameters a and b")
    p, q = pair_type(target)
    M = manifold_of(target)
    logger.info(f"📐 {tensor} flatness on {M.name} over {samples} samples")
    plan = draw_plan(M.sample_box, samples, seed)

    def evaluate(x) -> float:
        bundle = curvature_at(M, x)
        return frame_max(tensor_at(bundle, tensor, p, q, params), bundle.g)

    components = map_ordered(evaluate, list(plan.points), workers, f"{tensor} samples")
    worst = float(np.max(components))
    return FlatnessReport(
        tensor_name=tensor,
        max_component=worst,
        samples=samples,
        tol=tol,
        is_flat=bool(worst < tol),
        a=None if params is None else params.a,
        b=None if params is None else params.b,
    )


def einstein_check(target: Target, samples: int = DEFAULT_SAMPLES, seed: int = DEFAULT_SEED,
                   workers: int = 1, tol: float = TOL_EINSTEIN) -> EinsteinReport:
    """
    Fit Ric = lambda g over all samples and report the worst deviation.

    In orthonormal frames the least-squares lambda is the mean of scal / n.
    """
    bundles = sample_bundles(target, samples, seed, workers)
    n = bundles[0].dim
    mean_scal = float(np.mean([bundle.scal for bundle in bundles]))
    lam = mean_scal / n
    worst = max(einstein_residual_at(bundle, lam) for bundle in bundles)
    is_einstein = worst < tol
    return EinsteinReport(**{
        "lambda": lam, "max_residual": worst, "scal": mean_scal,
        "is_einstein": bool(is_einstein), "samples": samples, "tol": tol,
    })


def _plane_curvatures(bundle: CurvatureBundle, vectors: Sequence[np.ndarray]) -> list:
    values = []
    for k in range(0, len(vectors) - 1, 2):
        try:
            values.append(sectional(bundle, bundle.g, vectors[k], vectors[k + 1]))
        except DegeneratePlaneError as e:
            logger.debug(f"Skipping plane: {e}")
    return values


def curvature_summary(target: Target, samples: int = DEFAULT_SAMPLES, seed: int = DEFAULT_SEED,
                      at: Optional[Sequence[float]] = None, workers: int = 1) -> CurvatureSummary:
    """
    Scalar curvature, Ricci eigenvalues and sectional curvatures of random planes.

    With `at`, only that point is evaluated; a point outside the sample box is
    still evaluated when the metric is positive definite there.
    """
    M = manifold_of(target)
    if at is not None:
        point = np.asarray(at, dtype=float)
        if len(point) != M.dim:
            raise DimensionMismatchError(f"point has {len(point)} coordinates, chart has {M.dim}")
        if not M.contains(point):
            logger.warning(f"⚠️ Point {tuple(point)} lies outside the sample box of {M.name}")
        points = point[None, :]
        vectors = draw_plan(M.sample_box, 1, seed).vectors
    else:
        plan = draw_plan(M.sample_box, samples, seed)
        points, vectors = plan.points, plan.vectors

    def evaluate(k: int) -> dict:
        bundle = curvature_at(M, points[k])
        return {
            "scal": bundle.scal,
            "ricci": ricci_eigenvalues(bundle),
            "sectional": _plane_curvatures(bundle, vectors[k]),
        }

    rows = map_ordered(evaluate, range(len(points)), workers, "curvature samples")
    scal = np.array([row["scal"] for row in rows])
    ricci = np.array([row["ricci"] for row in rows])
    planes = [value for row in rows for value in row["sectional"]]
    return CurvatureSummary(
        points=len(points),
        at=None if at is None else [float(v) for v in points[0]],
        scal_min=float(scal.min()),
        scal_max=float(scal.max()),
        ricci_eigenvalues_min=[float(v) for v in ricci.min(axis=0)],
        ricci_eigenvalues_max=[float(v) for v in ricci.max(axis=0)],
        sectional_min=float(min(planes)) if planes else float("nan"),
        sectional_max=float(max(planes)) if planes else float("nan"),
        planes=len(planes),
    )
