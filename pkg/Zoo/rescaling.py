"""
Conformal change of a chart metric.
"""

import logging

from Data_Classes.classes import ContactPairStructure, Target, manifold_of
from Expression_Engine import expr_ast as ex
from Expression_Engine.expr_parser import parse

logger = logging.getLogger(__name__)


def conformally_rescaled(target: Target, f_text: str) -> Target:
    """
    Same chart and fields with metric exp(2f) g.

    Args:
        target (Target): Manifold or contact pair
        f_text (str): Conformal factor f in the chart coordinates

    Returns:
        Target: A manifold of the same kind; a contact pair keeps its field names
    """
    M = manifold_of(target)
    f = parse(f_text, M.dim)
    weight = ex.Unary("exp", ex.scale(2.0, f))
    metric = tuple(tuple(ex.mul(weight, entry) for entry in row) for row in M.metric)
    rescaled = M.with_fields(metric=metric, name=f"{M.name}_conformal")
    logger.debug(f"Rescaled {M.name} by exp(2*({f_text}))")
    if isinstance(target, ContactPairStructure):
        return target.with_base(rescaled)
    return rescaled
