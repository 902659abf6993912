"""
Conformal, concircular and quasi-conformal tensors, identity and theorem audits.
"""

from .auditors import audit_theorem_concircular, audit_theorem_conformal, audit_theorem_quasiconformal
from .identities import audit_identities
from .tensors import (
    TENSORS,
    concircular_at,
    conformal_at,
    curvature_summary,
    einstein_check,
    flatness,
    quasi_conformal_at,
    tensor_at,
)

__all__ = [
    'TENSORS', 'audit_identities', 'audit_theorem_concircular', 'audit_theorem_conformal',
    'audit_theorem_quasiconformal', 'concircular_at', 'conformal_at', 'curvature_summary',
    'einstein_check', 'flatness', 'quasi_conformal_at', 'tensor_at',
]
