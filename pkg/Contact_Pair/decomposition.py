"""
Splitting of the tangent space along the characteristic foliations.

TG_i is ker d alpha_i ∩ ker alpha1 ∩ ker alpha2, of dimension 2q for i = 1 and
2p for i = 2. The foliation F_1 has tangent space TG_1 ⊕ R Z2 and F_2 has
TG_2 ⊕ R Z1. Bases of TG_i are g-orthonormalized in coordinate order.
"""

import logging
from dataclasses import dataclass

import numpy as np

from Data_Classes.classes import ContactPairStructure, Decomposition
from Data_Classes.errors import NotDecomposableError
from Data_Classes.reports import AuditEntry, AuditReport
from Geometry_Core.metric import endo_frame_max, g_orthonormalize, vector_norm
from utils.sampling import DEFAULT_SAMPLES, DEFAULT_SEED, column_max, draw_plan, map_ordered
from .pointwise import StructureValues, structure_at

logger = logging.getLogger(__name__)

NULL_TOL = 1e-8
COMMUTE_TOL = 1e-8
TOL_ALGEBRAIC = 1e-10
DECOMPOSABLE_ANCHOR = "decomposable if TF_i is invariant under phi"


def _null_space(A: np.ndarray) -> np.ndarray:
    _, s, vh = np.linalg.svd(A)
    cutoff = NULL_TOL * max(1.0, float(s[0]) if len(s) else 1.0)
    rank = int(np.sum(s > cutoff))
    return vh[rank:].T


@dataclass(frozen=True)
class FoliationSplit:
    """
    Adapted basis [TG_1 | TG_2 | Z1 | Z2] at one point.

    Attributes:
        leaves1 (np.ndarray): Basis of TG_1, shape (n, 2q)
        leaves2 (np.ndarray): Basis of TG_2, shape (n, 2p)
        basis (np.ndarray): Adapted basis as columns
        basis_inv (np.ndarray): Its inverse
    """
    leaves1: np.ndarray
    leaves2: np.ndarray
    basis: np.ndarray
    basis_inv: np.ndarray

    def _projector(self, on_leaves1: bool, on_leaves2: bool, on_z1: bool, on_z2: bool) -> np.ndarray:
        weights = np.concatenate([
            np.full(self.leaves1.shape[1], float(on_leaves1)),
            np.full(self.leaves2.shape[1], float(on_leaves2)),
            [float(on_z1), float(on_z2)],
        ])
        return self.basis @ np.diag(weights) @ self.basis_inv

    @property
    def tf1(self) -> np.ndarray:
        """Projector onto TF_1 = TG_1 ⊕ R Z2."""
        return self._projector(True, False, False, True)

    @property
    def tf2(self) -> np.ndarray:
        """Projector onto TF_2 = TG_2 ⊕ R Z1."""
        return self._projector(False, True, True, False)

    @property
    def horizontal1(self) -> np.ndarray:
        """Projector onto TG_2, where d alpha1 is non-degenerate."""
        return self._projector(False, True, False, False)

    @property
    def horizontal2(self) -> np.ndarray:
        """Projector onto TG_1, where d alpha2 is non-degenerate."""
        return self._projector(True, False, False, False)


def foliation_split(values: StructureValues, p: int, q: int) -> FoliationSplit:
    """
    Build the adapted basis at a point.

    Raises:
        NotDecomposableError: If the leaf dimensions differ from (2q, 2p) or the
            basis is singular
    """
    leaves = []
    for W, expected in ((values.W1, 2 * q), (values.W2, 2 * p)):
        null = _null_space(np.vstack([W, values.a1, values.a2]))
        basis = g_orthonormalize(null, values.g, NULL_TOL)
        if basis.shape[1] != expected:
            raise NotDecomposableError(
                f"leaf dimension {basis.shape[1]} where {expected} was expected at {tuple(values.point)}"
            )
        leaves.append(basis)
    full = np.column_stack([leaves[0], leaves[1], values.z1, values.z2])
    if np.linalg.matrix_rank(full, tol=NULL_TOL) < len(values.g):
        raise NotDecomposableError(f"foliation basis is singular at {tuple(values.point)}")
    return FoliationSplit(leaves[0], leaves[1], full, np.linalg.inv(full))


def commutator_residual(split: FoliationSplit, values: StructureValues) -> float:
    """Largest frame component of [P, phi] over the two foliation projectors."""
    phi = values.phi
    return max(
        endo_frame_max(P @ phi - phi @ P, values.frame, values.coframe)
        for P in (split.tf1, split.tf2)
    )


def decompose(S: ContactPairStructure, X, x) -> Decomposition:
    """
    Split X into horizontal parts along each foliation and Reeb coefficients.

    Args:
        S (ContactPairStructure): Structure
        X: Vector at x
        x: Chart point

    Returns:
        Decomposition: x1h in TG_1, x2h in TG_2, v1 = alpha1(X), v2 = alpha2(X)

    Raises:
        NotDecomposableError: If phi does not preserve the foliations at x
    """
    values = structure_at(S, x)
    split = foliation_split(values, S.p, S.q)
    residual = commutator_residual(split, values)
    if residual > COMMUTE_TOL:
        raise NotDecomposableError(
            f"foliation projectors do not commute with phi at {tuple(values.point)} (residual {residual:.3g})"
        )
    coeffs = split.basis_inv @ np.asarray(X, dtype=float)
    k1 = split.leaves1.shape[1]
    k2 = split.leaves2.shape[1]
    return Decomposition(
        x1h=split.leaves1 @ coeffs[:k1],
        x2h=split.leaves2 @ coeffs[k1:k1 + k2],
        v1=float(coeffs[k1 + k2]),
        v2=float(coeffs[k1 + k2 + 1]),
    )


def check_decomposable(S: ContactPairStructure, samples: int = DEFAULT_SAMPLES,
                       seed: int = DEFAULT_SEED, workers: int = 1) -> AuditReport:
    """
    Check that phi preserves both characteristic foliations at every sample.

    Also reports the reconstruction X = x1h + x2h + v1 Z1 + v2 Z2 and the
    horizontality of the two parts on the probe vectors.
    """
    plan = draw_plan(S.base.sample_box, samples, seed)

    def evaluate(k: int) -> dict:
        values = structure_at(S, plan.points[k])
        try:
            split = foliation_split(values, S.p, S.q)
        except NotDecomposableError as e:
            logger.warning(f"⚠️ {e}")
            return {"split failures": 1.0}
        row = {"split failures": 0.0, "commutator": commutator_residual(split, values),
               "reconstruction": 0.0, "horizontal parts": 0.0}
        k1 = split.leaves1.shape[1]
        k2 = split.leaves2.shape[1]
        for X in plan.vectors[k]:
            coeffs = split.basis_inv @ X
            x1h = split.leaves1 @ coeffs[:k1]
            x2h = split.leaves2 @ coeffs[k1:k1 + k2]
            rebuilt = x1h + x2h + (values.a1 @ X) * values.z1 + (values.a2 @ X) * values.z2
            row["reconstruction"] = max(row["reconstruction"], vector_norm(values.g, rebuilt - X))
            row["horizontal parts"] = max(
                row["horizontal parts"],
                *(abs(float(a @ part)) for a in (values.a1, values.a2) for part in (x1h, x2h)),
            )
        return row

    merged = column_max(map_ordered(evaluate, range(samples), workers, "decomposition samples"))
    report = AuditReport(title="Decomposability")
    if merged.get("split failures", 0.0) > 0.0:
        report.add(AuditEntry(
            name="phi preserves TF_1 and TF_2", anchor=DECOMPOSABLE_ANCHOR, status="fail",
            provenance="PAPER",
            note=f"leaf dimensions differ from (2q, 2p) = ({2 * S.q}, {2 * S.p}) at some sample",
        ))
        return report
    report.add(AuditEntry.check("phi preserves TF_1 and TF_2", merged["commutator"], TOL_ALGEBRAIC,
                                anchor=DECOMPOSABLE_ANCHOR))
    report.add(AuditEntry.check("X = x1h + x2h + alpha1(X) Z1 + alpha2(X) Z2", merged["reconstruction"],
                                TOL_ALGEBRAIC, anchor="X=X^{1^h}+X^{2^h}+alpha_1(X^2)Z_1+alpha_2(X^1)Z_2"))
    report.add(AuditEntry.check("alpha_i(x1h) = alpha_i(x2h) = 0", merged["horizontal parts"],
                                TOL_ALGEBRAIC, provenance="DERIVED"))
    return report
