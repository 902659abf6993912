"""
Contact pair built from two almost contact structures on a Hermitian manifold.

phi is the composition phi1 ∘ phi2; the structure is returned together with
a report on every hypothesis the construction relies on.
"""

import logging
from typing import List, Tuple

import numpy as np

from Data_Classes.classes import ContactPairStructure, HermitianPairInput, MatrixExprs, VectorExprs
from Data_Classes.errors import PrerequisiteFailed
from Data_Classes.reports import AuditEntry, AuditReport
from Expression_Engine import expr_ast as ex
from Expression_Engine.expr_parser import parse
from Geometry_Core.fields import endo_at, form_at, vector_at
from Geometry_Core.forms import exterior_derivative_matrix
from Geometry_Core.metric import endo_frame_max, metric_at, orthonormal_frame, vector_norm
from utils.sampling import DEFAULT_SAMPLES, DEFAULT_SEED, column_max, draw_plan, map_ordered
from .builtins import builtin

logger = logging.getLogger(__name__)

TOL_PREREQUISITE = 1e-8
TOL_DUALITY = 1e-10
PAIR_PHI = "phi_pair"

HERMITIAN = "(M, g, J) Hermitian, dim M = 2p+2q+2"
SIGN_RELATION = "\\varphi_2(\\varphi_1X_1)=-\\varphi_1(\\varphi_2X_1)=JX_1+\\eta_1(X_1)\\xi_2-\\eta_2(X_1)\\xi_1"
PHI_SQUARED = "\\phi^2X_1=-X_1+\\eta_1(X_1)\\xi_1+\\eta_2(X_1)\\xi_2"
DUALITY = "\\eta_i(\\xi_j)=\\delta_{ij}"
SKEW = "g(\\phi X_1,X_2)=-g(X_1,\\phi X_2)"
COMPATIBLE = "g(\\phi X_1,\\phi X_2)=g(X_1,X_2)-\\eta_1(X_1)\\eta_1(X_2)-\\eta_2(X_1)\\eta_2(X_2)"


def compose(A: MatrixExprs, B: MatrixExprs) -> MatrixExprs:
    """Components of the endomorphism A ∘ B."""
    n = len(A)
    return tuple(
        tuple(ex.total(ex.mul(A[i][k], B[k][j]) for k in range(n)) for j in range(n))
        for i in range(n)
    )


def _tensor_sum(terms: List[Tuple[float, VectorExprs, VectorExprs]]) -> MatrixExprs:
    """sum of sign * v ⊗ w, where v ⊗ w maps X to w(X) v."""
    n = len(terms[0][1])
    return tuple(
        tuple(ex.total(ex.scale(sign, ex.mul(v[i], w[j])) for sign, v, w in terms) for j in range(n))
        for i in range(n)
    )


def _components(dim: int, entries: dict) -> VectorExprs:
    return tuple(parse(entries[i], dim) if i in entries else ex.ZERO for i in range(dim))


def hopf_pair_input() -> HermitianPairInput:
    """
    Two anticommuting almost contact structures on the product of two 3-spheres.

    With orthonormal horizontal frames (e1, e2) and (f1, f2) of the factors and
    Reeb fields xi_a, xi_b:
        phi1 = f1⊗e^1 - e1⊗f^1 - f2⊗e^2 + e2⊗f^2
        phi2 = f2⊗e^1 + f1⊗e^2 - e2⊗f^1 - e1⊗f^2
        J    = -e2⊗e^1 + e1⊗e^2 - f2⊗f^1 + f1⊗f^2 + xi_b⊗eta_a - xi_a⊗eta_b
    """
    base = builtin("s3_x_s3").manifold
    n = base.dim
    e1 = _components(n, {0: "1"})
    e2 = _components(n, {1: "sin(x0)/cos(x0)", 2: "-(cos(x0)/sin(x0))"})
    f1 = _components(n, {3: "1"})
    f2 = _components(n, {4: "sin(x3)/cos(x3)", 5: "-(cos(x3)/sin(x3))"})
    e1_dual = _components(n, {0: "1"})
    e2_dual = _components(n, {1: "sin(x0)*cos(x0)", 2: "-(sin(x0)*cos(x0))"})
    f1_dual = _components(n, {3: "1"})
    f2_dual = _components(n, {4: "sin(x3)*cos(x3)", 5: "-(sin(x3)*cos(x3))"})
    xi_a = _components(n, {1: "1", 2: "1"})
    xi_b = _components(n, {4: "1", 5: "1"})
    eta_a = _components(n, {1: "cos(x0)^2", 2: "sin(x0)^2"})
    eta_b = _components(n, {4: "cos(x3)^2", 5: "sin(x3)^2"})

    phi1 = _tensor_sum([(1, f1, e1_dual), (-1, e1, f1_dual), (-1, f2, e2_dual), (1, e2, f2_dual)])
    phi2 = _tensor_sum([(1, f2, e1_dual), (1, f1, e2_dual), (-1, e2, f1_dual), (-1, e1, f2_dual)])
    J = _tensor_sum([(-1, e2, e1_dual), (1, e1, e2_dual), (-1, f2, f1_dual), (1, f1, f2_dual),
                     (1, xi_b, eta_a), (-1, xi_a, eta_b)])
    manifold = base.with_fields(
        vectors={"xi1": xi_a, "xi2": xi_b},
        forms={"eta1": eta_a, "eta2": eta_b},
        endos={"J": J, "phi1": phi1, "phi2": phi2},
        name="hopf_pair",
    )
    return HermitianPairInput(base=manifold, J="J", phi1="phi1", phi2="phi2",
                              eta1="eta1", eta2="eta2", xi1="xi1", xi2="xi2")


def _structure_type(hermitian: HermitianPairInput, x) -> Tuple[int, int]:
    """p from the rank of d eta1 at x, q from the dimension."""
    W1 = exterior_derivative_matrix(hermitian.base, hermitian.eta1, x)
    rank = int(np.linalg.matrix_rank(W1, tol=1e-8))
    p = rank // 2
    return p, (hermitian.base.dim - 2) // 2 - p


def hermitian_pair_build(hermitian: HermitianPairInput, samples: int = DEFAULT_SAMPLES,
                         seed: int = DEFAULT_SEED, strict: bool = False,
                         workers: int = 1) -> Tuple[ContactPairStructure, AuditReport]:
    """
    Build phi = phi1 ∘ phi2 and audit the construction.

    Args:
        hermitian (HermitianPairInput): J, phi_i, eta_i, xi_i named on a chart
        samples (int): Number of sample points
        seed (int): Sampler seed
        strict (bool): Raise on the first failed hypothesis instead of only flagging it
        workers (int): Worker threads

    Returns:
        Tuple[ContactPairStructure, AuditReport]: The contact pair (alpha_i = eta_i,
        Z_i = xi_i) and the hypothesis and conclusion residuals

    Raises:
        PrerequisiteFailed: In strict mode, when a hypothesis exceeds its tolerance
    """
    M = hermitian.base
    phi_exprs = compose(M.endo(hermitian.phi1), M.endo(hermitian.phi2))
    base = M.with_fields(endos={PAIR_PHI: phi_exprs})
    plan = draw_plan(base.sample_box, samples, seed)
    n = base.dim
    identity = np.eye(n)

    def evaluate(k: int) -> dict:
        x = plan.points[k]
        g, _ = metric_at(base, x)
        frame, coframe = orthonormal_frame(g)
        J = endo_at(base, hermitian.J, x)
        phi1 = endo_at(base, hermitian.phi1, x)
        phi2 = endo_at(base, hermitian.phi2, x)
        phi = endo_at(base, PAIR_PHI, x)
        xi1, xi2 = vector_at(base, hermitian.xi1, x), vector_at(base, hermitian.xi2, x)
        eta1, eta2 = form_at(base, hermitian.eta1, x), form_at(base, hermitian.eta2, x)
        vertical = np.outer(xi1, eta1) + np.outer(xi2, eta2)
        endo = lambda F: endo_frame_max(F, frame, coframe)
        bilinear = lambda B: float(np.max(np.abs(frame.T @ B @ frame)))
        return {
            "g(phi1 X, Y) = -g(X, phi1 Y)": bilinear(g @ phi1 + (g @ phi1).T),
            "g(phi2 X, Y) = -g(X, phi2 Y)": bilinear(g @ phi2 + (g @ phi2).T),
            "g(JX, JY) = g(X, Y)": bilinear(J.T @ g @ J - g),
            "J^2 = -I": endo(J @ J + identity),
            "J xi1 = xi2": vector_norm(g, J @ xi1 - xi2),
            "J xi2 = -xi1": vector_norm(g, J @ xi2 + xi1),
            "phi1^2 = -I + eta1⊗xi1 + eta2⊗xi2": endo(phi1 @ phi1 + identity - vertical),
            "phi2^2 = -I + eta1⊗xi1 + eta2⊗xi2": endo(phi2 @ phi2 + identity - vertical),
            "phi1 J = -J phi1 = phi2": max(endo(phi1 @ J - phi2), endo(-J @ phi1 - phi2)),
            "phi2 J = -J phi2 = -phi1": max(endo(phi2 @ J + phi1), endo(-J @ phi2 + phi1)),
            "phi2 phi1 = -phi1 phi2": endo(phi2 @ phi1 + phi1 @ phi2),
            "phi2 phi1 = J - eta1⊗xi2 + eta2⊗xi1": endo(
                phi2 @ phi1 - J + np.outer(xi2, eta1) - np.outer(xi1, eta2)),
            "printed": endo(phi2 @ phi1 - J - np.outer(xi2, eta1) + np.outer(xi1, eta2)),
            "phi^2 = -I + eta1⊗xi1 + eta2⊗xi2": endo(phi @ phi + identity - vertical),
            "eta_i(xi_j) = delta_ij": float(np.max(np.abs(
                np.array([[eta1 @ xi1, eta1 @ xi2], [eta2 @ xi1, eta2 @ xi2]]) - np.eye(2)))),
            "phi xi_1 = phi xi_2 = 0": max(vector_norm(g, phi @ xi1), vector_norm(g, phi @ xi2)),
            "g(phi X, Y) = -g(X, phi Y)": bilinear(g @ phi + (g @ phi).T),
            "g(phi X, phi Y) = g(X, Y) - eta1(X)eta1(Y) - eta2(X)eta2(Y)": bilinear(
                phi.T @ g @ phi - g + np.outer(eta1, eta1) + np.outer(eta2, eta2)),
        }

    merged = column_max(map_ordered(evaluate, range(samples), workers, "Hermitian pair samples"))
    printed = merged.pop("printed")
    conclusions = ("phi^2 = -I + eta1⊗xi1 + eta2⊗xi2", "eta_i(xi_j) = delta_ij", "phi xi_1 = phi xi_2 = 0",
                   "g(phi X, Y) = -g(X, phi Y)", "g(phi X, phi Y) = g(X, Y) - eta1(X)eta1(Y) - eta2(X)eta2(Y)")
    anchors = {
        "phi2 phi1 = -phi1 phi2": SIGN_RELATION,
        "phi2 phi1 = J - eta1⊗xi2 + eta2⊗xi1": SIGN_RELATION,
        "phi^2 = -I + eta1⊗xi1 + eta2⊗xi2": PHI_SQUARED,
        "eta_i(xi_j) = delta_ij": DUALITY,
        "phi xi_1 = phi xi_2 = 0": PHI_SQUARED,
        "g(phi X, Y) = -g(X, phi Y)": SKEW,
        "g(phi X, phi Y) = g(X, Y) - eta1(X)eta1(Y) - eta2(X)eta2(Y)": COMPATIBLE,
    }

    report = AuditReport(title=f"Hermitian contact pair construction on {M.name}")
    prerequisites = []
    for name, value in merged.items():
        tol = TOL_DUALITY if name == "eta_i(xi_j) = delta_ij" else TOL_PREREQUISITE
        provenance = "DERIVED" if name == "phi2 phi1 = J - eta1⊗xi2 + eta2⊗xi1" else "PAPER"
        entry = report.add(AuditEntry.check(name, value, tol, anchor=anchors.get(name, HERMITIAN),
                                            provenance=provenance))
        if name not in conclusions:
            prerequisites.append(entry)
    report.add(AuditEntry.finding("phi2 phi1 = J + eta1⊗xi2 - eta2⊗xi1 (as printed)", printed,
                                  anchor=SIGN_RELATION, provenance="PAPER", tol=TOL_PREREQUISITE,
                                  note="both sides differ on xi_1 for any instance"))

    failed = [entry for entry in prerequisites if entry.failed]
    for entry in failed:
        logger.warning(f"⚠️ Hermitian pair hypothesis '{entry.name}' fails with residual {entry.max_residual:.3g}")
    if strict and failed:
        raise PrerequisiteFailed(failed[0].name, failed[0].max_residual)

    p, q = _structure_type(hermitian, plan.points[0])
    structure = ContactPairStructure(
        base=base, alpha1=hermitian.eta1, alpha2=hermitian.eta2,
        z1=hermitian.xi1, z2=hermitian.xi2, phi=PAIR_PHI, p=p, q=q,
    )
    return structure, report
