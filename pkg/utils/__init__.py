"""
Seeded sampling and ordered worker fan-out shared by every check.
"""

from .sampling import DEFAULT_SAMPLES, DEFAULT_SEED, SamplePlan, column_max, draw_plan, map_ordered

__all__ = ['DEFAULT_SAMPLES', 'DEFAULT_SEED', 'SamplePlan', 'column_max', 'draw_plan', 'map_ordered']
