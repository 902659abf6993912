"""
Normality (integrability of J and T) and almost contact normality.

N is tensorial, so it is evaluated on a fixed family of probe fields: the
coordinate fields plus seeded random affine fields c + A x. The derived
structures J and T are assembled as expression fields so that their jets
are exact.
"""

import itertools
import logging
from typing import Dict, List, Tuple

import numpy as np

from Data_Classes.classes import ChartedManifold, ContactPairStructure, MatrixExprs
from Data_Classes.reports import AuditEntry, AuditReport
from Expression_Engine import expr_ast as ex
from Geometry_Core.fields import endo_jet, nijenhuis_jets, vector_jet
from Geometry_Core.forms import exterior_derivative_matrix
from Geometry_Core.metric import metric_at, vector_norm
from utils.sampling import DEFAULT_SAMPLES, DEFAULT_SEED, column_max, draw_plan, map_ordered

logger = logging.getLogger(__name__)

TOL_NIJENHUIS = 1e-7
AFFINE_FIELDS = 10
NORMAL = "N_J=0, N_T=0"


def derived_structures(S: ContactPairStructure) -> Dict[str, MatrixExprs]:
    """
    Expression fields J = phi - alpha2⊗Z1 + alpha1⊗Z2 and T = phi + alpha2⊗Z1 - alpha1⊗Z2.
    """
    M = S.base
    phi = M.endo(S.phi)
    z1, z2 = M.vector(S.z1), M.vector(S.z2)
    a1, a2 = M.form(S.alpha1), M.form(S.alpha2)
    n = M.dim
    J = tuple(
        tuple(ex.add(ex.sub(phi[i][j], ex.mul(z1[i], a2[j])), ex.mul(z2[i], a1[j])) for j in range(n))
        for i in range(n)
    )
    T = tuple(
        tuple(ex.sub(ex.add(phi[i][j], ex.mul(z1[i], a2[j])), ex.mul(z2[i], a1[j])) for j in range(n))
        for i in range(n)
    )
    return {"~J": J, "~T": T}


def probe_fields(dim: int, seed: int, affine: int = AFFINE_FIELDS) -> Dict[str, Tuple[ex.Expr, ...]]:
    """Coordinate fields followed by seeded affine fields."""
    fields: Dict[str, Tuple[ex.Expr, ...]] = {}
    for k in range(dim):
        fields[f"~coord{k}"] = tuple(ex.ONE if i == k else ex.ZERO for i in range(dim))
    rng = np.random.default_rng(seed)
    for k in range(affine):
        offset = rng.standard_normal(dim)
        linear = rng.standard_normal((dim, dim))
        fields[f"~affine{k}"] = tuple(
            ex.total([ex.Constant(float(offset[i]))]
                     + [ex.mul(ex.Constant(float(linear[i, j])), ex.Variable(j)) for j in range(dim)])
            for i in range(dim)
        )
    return fields


def _nijenhuis_max(M: ChartedManifold, endo: str, probes: List[str], x, g) -> float:
    F = endo_jet(M, endo, x)
    jets = [vector_jet(M, name, x) for name in probes]
    worst = 0.0
    for X, Y in itertools.combinations(jets, 2):
        worst = max(worst, vector_norm(g, nijenhuis_jets(F, X, Y)))
    return worst


def normality_check(S: ContactPairStructure, samples: int = DEFAULT_SAMPLES,
                    seed: int = DEFAULT_SEED, workers: int = 1) -> AuditReport:
    """
    Largest |N_J| and |N_T| over samples and all pairs of probe fields.
    """
    probes = probe_fields(S.base.dim, seed)
    M = S.base.with_fields(vectors=probes, endos=derived_structures(S))
    names = list(probes)
    plan = draw_plan(M.sample_box, samples, seed)

    def evaluate(k: int) -> dict:
        x = plan.points[k]
        g, _ = metric_at(M, x)
        return {"N_J = 0": _nijenhuis_max(M, "~J", names, x, g),
                "N_T = 0": _nijenhuis_max(M, "~T", names, x, g)}

    merged = column_max(map_ordered(evaluate, range(samples), workers, "normality samples"))
    report = AuditReport(title="Normality")
    for name, value in merged.items():
        report.add(AuditEntry.check(name, value, TOL_NIJENHUIS, anchor=NORMAL,
                                    note=f"{len(names)} probe fields, {len(names) * (len(names) - 1) // 2} pairs"))
    return report


def almost_contact_normality(M: ChartedManifold, phi: str, eta: str, xi: str,
                             samples: int = DEFAULT_SAMPLES, seed: int = DEFAULT_SEED,
                             workers: int = 1) -> AuditReport:
    """
    Residual of [phi, phi] + 2 d eta ⊗ xi on the probe family.

    With the 1/2 evaluation convention 2 d eta(X, Y) = X^T W Y.
    """
    probes = probe_fields(M.dim, seed)
    probed = M.with_fields(vectors=probes)
    names = list(probes)
    plan = draw_plan(M.sample_box, samples, seed)

    def evaluate(k: int) -> dict:
        x = plan.points[k]
        g, _ = metric_at(probed, x)
        F = endo_jet(probed, phi, x)
        xi_value = vector_jet(probed, xi, x)[0]
        W = exterior_derivative_matrix(probed, eta, x)
        jets = [vector_jet(probed, name, x) for name in names]
        worst = 0.0
        for X, Y in itertools.combinations(jets, 2):
            residual = nijenhuis_jets(F, X, Y) + float(X[0] @ W @ Y[0]) * xi_value
            worst = max(worst, vector_norm(g, residual))
        return {"[phi, phi] + 2 d eta ⊗ xi = 0": worst}

    merged = column_max(map_ordered(evaluate, range(samples), workers, "almost contact samples"))
    report = AuditReport(title="Almost contact normality")
    for name, value in merged.items():
        report.add(AuditEntry.check(name, value, TOL_NIJENHUIS, provenance="DERIVED",
                                    anchor="Sasakian: normal contact metric"))
    return report
