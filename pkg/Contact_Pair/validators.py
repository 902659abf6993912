"""
Validators for the contact pair axioms.

Each validator draws its sample plan from the seed, evaluates residuals per
point (optionally on worker threads) and merges them by maximum. Failures are
report entries; only malformed input raises.
"""

import logging

import numpy as np

from Data_Classes.classes import ChartedManifold, ContactPairStructure
from Data_Classes.errors import NotSPDError
from Data_Classes.reports import AuditEntry, AuditReport
from Geometry_Core.curvature import curvature_at, symmetry_residuals
from Geometry_Core.fields import bracket_jets, vector_jet
from Geometry_Core.forms import ExteriorForm, dd_residual, wedge_power, wedge_power_nonzero
from Geometry_Core.metric import (
    covector_frame_max,
    endo_frame_max,
    metric_at,
    vector_norm,
)
from utils.sampling import DEFAULT_SAMPLES, DEFAULT_SEED, column_max, draw_plan, map_ordered
from .pointwise import structure_at

logger = logging.getLogger(__name__)

# Tolerance ladder: no derivatives, exterior derivatives and brackets,
# connection, curvature and Nijenhuis.
TOL_ALGEBRAIC = 1e-10
TOL_EXTERIOR = 1e-9
TOL_FIRST = 1e-8
TOL_SECOND = 1e-7
TOL_INVERSE = 1e-12
RANK_ZERO = 1e-8
RANK_NONZERO = 1e-6

CONTACT_PAIR = "alpha_1∧(dalpha_1)^p∧alpha_2∧(dalpha_2)^q≠0, (dalpha_1)^{p+1}=0"
ENDOMORPHISM = "phi^2=-I+alpha_1⊗Z_1+alpha_2⊗Z_2, phi Z_1=phi Z_2=0"
ASSOCIATED = "g(X_1,phi X_2)=(dalpha_1+dalpha_2)(X_1,X_2)"
REEB = "alpha_1(Z_1)=alpha_2(Z_2)=1, alpha_1(Z_2)=alpha_2(Z_1)=0, i_{Z_i}dalpha_j=0"


def _probe_pairs(vectors: np.ndarray):
    count = len(vectors)
    return [(vectors[k], vectors[(k + 1) % count]) for k in range(count)]


def validate_chart(M: ChartedManifold, samples: int = DEFAULT_SAMPLES,
                   seed: int = DEFAULT_SEED, workers: int = 1) -> AuditReport:
    """
    Metric-level checks for any chart: positivity, inverse, curvature symmetries, d(d alpha) = 0.
    """
    plan = draw_plan(M.sample_box, samples, seed)

    def evaluate(k: int) -> dict:
        x = plan.points[k]
        try:
            g, g_inv = metric_at(M, x)
        except NotSPDError as e:
            logger.warning(f"⚠️ {e}")
            return {"not spd": 1.0}
        row = {"not spd": 0.0, "inverse": float(np.max(np.abs(g @ g_inv - np.eye(M.dim))))}
        row.update(symmetry_residuals(curvature_at(M, x)))
        for name in M.forms:
            row[f"d(d{name}) = 0"] = dd_residual(M, name, x)
        return row

    merged = column_max(map_ordered(evaluate, range(samples), workers, "chart samples"))
    report = AuditReport(title=f"Chart checks for {M.name}")
    spd = report.add(AuditEntry.check("metric positive definite", merged.pop("not spd"), 0.5,
                                      provenance="TRIVIAL", note="leading principal minors above 1e-12"))
    if spd.failed:
        return report
    report.add(AuditEntry.check("g g_inv = I", merged.pop("inverse"), TOL_INVERSE, provenance="DERIVED"))
    for name, value in merged.items():
        tol = TOL_ALGEBRAIC if name.startswith("d(d") else TOL_EXTERIOR
        report.add(AuditEntry.check(name, value, tol, provenance="TRIVIAL"))
    return report


def validate_pair(S: ContactPairStructure, samples: int = DEFAULT_SAMPLES,
                  seed: int = DEFAULT_SEED, workers: int = 1) -> AuditReport:
    """
    Contact pair conditions: the top form is a volume form and the powers
    (d alpha_1)^{p+1}, (d alpha_2)^{q+1} vanish.
    """
    plan = draw_plan(S.base.sample_box, samples, seed)

    def evaluate(k: int) -> dict:
        values = structure_at(S, plan.points[k])
        d1 = ExteriorForm.from_matrix(values.W1)
        d2 = ExteriorForm.from_matrix(values.W2)
        _, top = wedge_power_nonzero([
            (ExteriorForm.from_covector(values.a1), 1), (d1, S.p),
            (ExteriorForm.from_covector(values.a2), 1), (d2, S.q),
        ])
        return {
            "top": -abs(top),
            "power1": wedge_power(d1, S.p + 1).max_abs(),
            "power2": wedge_power(d2, S.q + 1).max_abs(),
        }

    merged = column_max(map_ordered(evaluate, range(samples), workers, "pair samples"))
    report = AuditReport(title="Contact pair")
    report.add(AuditEntry.lower_bound("alpha1∧(dalpha1)^p∧alpha2∧(dalpha2)^q ≠ 0", -merged["top"],
                                      TOL_ALGEBRAIC, anchor=CONTACT_PAIR,
                                      note="minimum |coefficient| on dx^0∧...∧dx^{n-1} over samples"))
    report.add(AuditEntry.check("(dalpha1)^(p+1) = 0", merged["power1"], TOL_EXTERIOR, anchor=CONTACT_PAIR))
    report.add(AuditEntry.check("(dalpha2)^(q+1) = 0", merged["power2"], TOL_EXTERIOR, anchor=CONTACT_PAIR))
    return report


def verify_reeb(S: ContactPairStructure, samples: int = DEFAULT_SAMPLES,
                seed: int = DEFAULT_SEED, workers: int = 1) -> AuditReport:
    """Duality, interior-product and commutation equations of the Reeb fields."""
    M = S.base
    plan = draw_plan(M.sample_box, samples, seed)

    def evaluate(k: int) -> dict:
        x = plan.points[k]
        values = structure_at(S, x)
        row = {
            "alpha1(Z1) = 1": abs(values.a1 @ values.z1 - 1.0),
            "alpha2(Z2) = 1": abs(values.a2 @ values.z2 - 1.0),
            "alpha1(Z2) = 0": abs(values.a1 @ values.z2),
            "alpha2(Z1) = 0": abs(values.a2 @ values.z1),
        }
        for zi, z in ((1, values.z1), (2, values.z2)):
            for ai, W in ((1, values.W1), (2, values.W2)):
                contraction = 0.5 * (z @ W)
                row[f"i_Z{zi} dalpha{ai} = 0"] = float(np.max(np.abs(plan.vectors[k] @ contraction)))
        bracket = bracket_jets(vector_jet(M, S.z1, x), vector_jet(M, S.z2, x))
        row["[Z1, Z2] = 0"] = vector_norm(values.g, bracket)
        return {key: float(value) for key, value in row.items()}

    merged = column_max(map_ordered(evaluate, range(samples), workers, "Reeb samples"))
    report = AuditReport(title="Reeb vector fields")
    for name, value in merged.items():
        anchor = "since the Reeb vector fields commute" if name.startswith("[") else REEB
        report.add(AuditEntry.check(name, value, TOL_EXTERIOR, anchor=anchor))
    return report


def validate_endomorphism(S: ContactPairStructure, samples: int = DEFAULT_SAMPLES,
                          seed: int = DEFAULT_SEED, workers: int = 1) -> AuditReport:
    """Almost contact pair algebra for phi, its rank, and J^2 = T^2 = -I."""
    plan = draw_plan(S.base.sample_box, samples, seed)
    n = S.base.dim
    identity = np.eye(n)
    rank = S.horizontal_rank

    def evaluate(k: int) -> dict:
        v = structure_at(S, plan.points[k])
        phi = v.phi
        square = phi @ phi + identity - np.outer(v.z1, v.a1) - np.outer(v.z2, v.a2)
        singular = np.linalg.svd(v.coframe @ phi @ v.frame, compute_uv=False)
        J = v.J()
        T = v.T()
        return {
            "phi^2 = -I + alpha1⊗Z1 + alpha2⊗Z2": endo_frame_max(square, v.frame, v.coframe),
            "phi Z1 = 0": vector_norm(v.g, phi @ v.z1),
            "phi Z2 = 0": vector_norm(v.g, phi @ v.z2),
            "alpha1 ∘ phi = 0": covector_frame_max(v.a1 @ phi, v.frame),
            "alpha2 ∘ phi = 0": covector_frame_max(v.a2 @ phi, v.frame),
            "J^2 = -I": endo_frame_max(J @ J + identity, v.frame, v.coframe),
            "T^2 = -I": endo_frame_max(T @ T + identity, v.frame, v.coframe),
            "rank small": float(np.max(singular[rank:])) if rank < n else 0.0,
            "rank large": -float(singular[rank - 1]) if rank > 0 else -np.inf,
        }

    merged = column_max(map_ordered(evaluate, range(samples), workers, "endomorphism samples"))
    small = merged.pop("rank small")
    large = -merged.pop("rank large")
    report = AuditReport(title="Endomorphism")
    for name, value in merged.items():
        derived = name.startswith(("J", "T", "alpha"))
        report.add(AuditEntry.check(name, value, TOL_ALGEBRAIC, anchor="" if derived else ENDOMORPHISM,
                                    provenance="DERIVED" if derived else "PAPER"))
    rank_ok = small < RANK_ZERO and large > RANK_NONZERO
    report.add(AuditEntry(
        name=f"rank phi = 2p+2q = {rank}", anchor=ENDOMORPHISM, max_residual=small, tol=RANK_ZERO,
        status="pass" if rank_ok else "fail", provenance="DERIVED", value=large,
        note="two singular values below 1e-8, the rest above 1e-6; value is the smallest retained one",
    ))
    return report


def validate_metric(S: ContactPairStructure, samples: int = DEFAULT_SAMPLES,
                    seed: int = DEFAULT_SEED, workers: int = 1) -> AuditReport:
    """Compatibility and association of g with (phi, alpha1, alpha2) on probe pairs."""
    plan = draw_plan(S.base.sample_box, samples, seed)

    def evaluate(k: int) -> dict:
        v = structure_at(S, plan.points[k])
        g = v.g
        compat = v.phi.T @ g @ v.phi - g + np.outer(v.a1, v.a1) + np.outer(v.a2, v.a2)
        assoc = g @ v.phi - 0.5 * (v.W1 + v.W2)
        antisym = v.phi.T @ g + g @ v.phi
        row = {"compat": 0.0, "assoc": 0.0, "antisym": 0.0}
        for X, Y in _probe_pairs(plan.vectors[k]):
            row["compat"] = max(row["compat"], abs(float(X @ compat @ Y)))
            row["assoc"] = max(row["assoc"], abs(float(X @ assoc @ Y)))
            row["antisym"] = max(row["antisym"], abs(float(X @ antisym @ Y)))
        for i, (z, a) in enumerate(((v.z1, v.a1), (v.z2, v.a2)), start=1):
            row[f"dual{i}"] = float(np.max(np.abs(plan.vectors[k] @ (g @ z - a))))
        gram = np.array([[v.z1 @ g @ v.z1, v.z1 @ g @ v.z2], [v.z2 @ g @ v.z1, v.z2 @ g @ v.z2]])
        row["gram"] = float(np.max(np.abs(gram - np.eye(2))))
        return row

    merged = column_max(map_ordered(evaluate, range(samples), workers, "metric samples"))
    report = AuditReport(title="Associated metric")
    report.add(AuditEntry.check("g(phi X, phi Y) = g(X,Y) - alpha1(X)alpha1(Y) - alpha2(X)alpha2(Y)",
                                merged["compat"], TOL_ALGEBRAIC, anchor="compatible if g(phi X_1,phi X_2)"))
    report.add(AuditEntry.check("g(X, phi Y) = (dalpha1 + dalpha2)(X,Y)", merged["assoc"], TOL_EXTERIOR,
                                anchor=ASSOCIATED))
    report.add(AuditEntry.check("g(X, Z1) = alpha1(X)", merged["dual1"], TOL_ALGEBRAIC,
                                anchor="g(Z_i,X)=alpha_i(X)"))
    report.add(AuditEntry.check("g(X, Z2) = alpha2(X)", merged["dual2"], TOL_ALGEBRAIC,
                                anchor="g(Z_i,X)=alpha_i(X)"))
    report.add(AuditEntry.check("g(Zi, Zj) = delta_ij", merged["gram"], TOL_ALGEBRAIC,
                                anchor="g(Z_i,Z_j)=delta_{ij}"))
    report.add(AuditEntry.check("g(phi X, Y) = -g(X, phi Y)", merged["antisym"], TOL_ALGEBRAIC,
                                provenance="TRIVIAL"))
    return report
