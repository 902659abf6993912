"""
Covariant derivative of phi on a normal metric contact pair and the Reeb
connection identities that come with it.
"""

import logging

import numpy as np

from Data_Classes.classes import ContactPairStructure
from Data_Classes.errors import NotDecomposableError
from Data_Classes.reports import AuditEntry, AuditReport
from Geometry_Core.fields import connection_at, endo_jet, nabla_endo, nabla_vector, vector_jet
from Geometry_Core.metric import endo_frame_max, vector_norm
from utils.sampling import DEFAULT_SAMPLES, DEFAULT_SEED, column_max, draw_plan, map_ordered
from .decomposition import foliation_split
from .pointwise import structure_at

logger = logging.getLogger(__name__)

TOL_NABLA_PHI = 1e-7
TOL_CONNECTION = 1e-8
NABLA_PHI = ("g((nabla_{X_1}phi)X_2,X_3)=sum_i(dalpha_i(phi X_2,X_1)alpha_i(X_3)"
            "-dalpha_i(phi X_3,X_1)alpha_i(X_2))")
REEB_PARALLEL = "nabla_{Z_i}Z_j=0, nabla_{Z_i}phi=0"
REEB_ROTATION = "nabla_X Z_1=-phi_1 X"


def nabla_phi_rhs(values, X1: np.ndarray, X2: np.ndarray, X3: np.ndarray) -> float:
    total = 0.0
    phi = values.phi
    for i in (1, 2):
        alpha = values.alpha(i)
        total += (values.d_alpha(i, phi @ X2, X1) * float(alpha @ X3)
                  - values.d_alpha(i, phi @ X3, X1) * float(alpha @ X2))
    return total


def check_nabla_phi(S: ContactPairStructure, samples: int = DEFAULT_SAMPLES,
                   seed: int = DEFAULT_SEED, workers: int = 1) -> AuditReport:
    """
    Compare both sides of the nabla phi formula on probe triples, together with
    nabla_X Z = -phi X, nabla_{Z_i} Z_j = 0, nabla_{Z_i} phi = 0 and
    nabla_X Z_i = -phi_i X (restricted to the foliations and unrestricted).
    """
    M = S.base
    plan = draw_plan(M.sample_box, samples, seed)

    def evaluate(k: int) -> dict:
        x = plan.points[k]
        values = structure_at(S, x)
        gamma = connection_at(M, x)
        phi_jet = endo_jet(M, S.phi, x)
        z_jets = (vector_jet(M, S.z1, x), vector_jet(M, S.z2, x))
        g = values.g
        vectors = plan.vectors[k]
        count = len(vectors)
        row = {"nabla phi": 0.0, "nabla Z": 0.0}
        for a in range(count):
            X1, X2, X3 = vectors[a], vectors[(a + 1) % count], vectors[(a + 2) % count]
            lhs = float((nabla_endo(phi_jet, gamma, X1) @ X2) @ g @ X3)
            row["nabla phi"] = max(row["nabla phi"], abs(lhs - nabla_phi_rhs(values, X1, X2, X3)))
            reeb = nabla_vector(z_jets[0], gamma, X1) + nabla_vector(z_jets[1], gamma, X1)
            row["nabla Z"] = max(row["nabla Z"], vector_norm(g, reeb + values.phi @ X1))
        reeb_values = (values.z1, values.z2)
        for i in range(2):
            for j in range(2):
                row[f"nabla_Z{i + 1} Z{j + 1} = 0"] = vector_norm(
                    g, nabla_vector(z_jets[j], gamma, reeb_values[i]))
            row[f"nabla_Z{i + 1} phi = 0"] = endo_frame_max(
                nabla_endo(phi_jet, gamma, reeb_values[i]), values.frame, values.coframe)
        try:
            split = foliation_split(values, S.p, S.q)
        except NotDecomposableError:
            row["split failures"] = 1.0
            return row
        row["split failures"] = 0.0
        partial = (values.phi @ split.horizontal1, values.phi @ split.horizontal2)
        restricted = 0.0
        unrestricted = 0.0
        for X in vectors:
            for i in range(2):
                deviation = lambda v: vector_norm(g, nabla_vector(z_jets[i], gamma, v) + partial[i] @ v)
                restricted = max(restricted, deviation(split.tf1 @ X), deviation(split.tf2 @ X))
                unrestricted = max(unrestricted, deviation(X))
        row["restricted"] = restricted
        row["unrestricted"] = unrestricted
        return row

    merged = column_max(map_ordered(evaluate, range(samples), workers, "nabla phi samples"))
    report = AuditReport(title="Covariant derivative of phi and Reeb connection identities")
    report.add(AuditEntry.check("g((nabla_X1 phi)X2, X3) = sum_i dalpha_i terms", merged.pop("nabla phi"),
                                TOL_NABLA_PHI, anchor=NABLA_PHI))
    report.add(AuditEntry.check("nabla_X Z = -phi X", merged.pop("nabla Z"), TOL_CONNECTION,
                                anchor="nabla_X Z=-phi X"))
    split_failed = merged.pop("split failures") > 0.0
    restricted = merged.pop("restricted", None)
    unrestricted = merged.pop("unrestricted", None)
    for name, value in merged.items():
        report.add(AuditEntry.check(name, value, TOL_CONNECTION, anchor=REEB_PARALLEL))
    if split_failed:
        note = "foliations could not be split at some sample"
        report.add(AuditEntry.skipped("nabla_X Zi = -phi_i X, X tangent to F_1 or F_2", note, anchor=REEB_ROTATION))
        report.add(AuditEntry.skipped("nabla_X Zi = -phi_i X, all X", note, anchor=REEB_ROTATION,
                                      provenance="DERIVED"))
        return report
    report.add(AuditEntry.check("nabla_X Zi = -phi_i X, X tangent to F_1 or F_2", restricted, TOL_CONNECTION,
                                anchor=REEB_ROTATION))
    report.add(AuditEntry.finding("nabla_X Zi = -phi_i X, all X", unrestricted, anchor=REEB_ROTATION,
                                  tol=TOL_CONNECTION,
                                  note="unrestricted reading; recorded without gating"))
    return report
