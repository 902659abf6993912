"""
Pointwise Riemannian machinery over a single chart.
"""

from .curvature import curvature_at, second_bianchi_residual, sectional
from .fields import (
    covariant_derivative_endo,
    covariant_derivative_vector,
    lie_bracket,
    nijenhuis,
)
from .forms import exterior_derivative_1form, wedge_power_nonzero
from .metric import metric_at

__all__ = [
    'curvature_at', 'second_bianchi_residual', 'sectional',
    'covariant_derivative_endo', 'covariant_derivative_vector', 'lie_bracket', 'nijenhuis',
    'exterior_derivative_1form', 'wedge_power_nonzero', 'metric_at',
]
