"""
Contact pair structures: axioms, decomposition, normality and the covariant derivative of phi.
"""

import logging

from Data_Classes.classes import ContactPairStructure
from Data_Classes.reports import AuditReport
from utils.sampling import DEFAULT_SAMPLES, DEFAULT_SEED
from .decomposition import check_decomposable, decompose
from .nabla_phi import check_nabla_phi
from .normality import almost_contact_normality, normality_check
from .validators import (
    validate_chart,
    validate_endomorphism,
    validate_metric,
    validate_pair,
    verify_reeb,
)

logger = logging.getLogger(__name__)

STRUCTURE_SUITE = (
    validate_pair,
    verify_reeb,
    validate_endomorphism,
    validate_metric,
    check_decomposable,
    normality_check,
    check_nabla_phi,
)


def run_structure_suite(S: ContactPairStructure, samples: int = DEFAULT_SAMPLES,
                        seed: int = DEFAULT_SEED, workers: int = 1) -> AuditReport:
    """Every contact pair validator, in order, merged into one report."""
    report = AuditReport(title=f"Contact pair suite for {S.base.name}")
    for validator in STRUCTURE_SUITE:
        logger.info(f"🔍 Running {validator.__name__} on {S.base.name}")
        part = validator(S, samples=samples, seed=seed, workers=workers)
        for entry in part.entries:
            entry.note = f"[{part.title}] {entry.note}".strip()
        report.extend(part)
    return report


__all__ = [
    'almost_contact_normality', 'check_decomposable', 'check_nabla_phi', 'decompose',
    'normality_check', 'run_structure_suite', 'validate_chart', 'validate_endomorphism',
    'validate_metric', 'validate_pair', 'verify_reeb',
]
