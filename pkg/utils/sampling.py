"""
Seeded sampling and ordered fan-out over sample points.

All random draws happen up front from one numpy Generator, so results do not
depend on the number of worker threads.
"""

import logging
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, List, Sequence, TypeVar

import numpy as np

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")

DEFAULT_SEED = 42
DEFAULT_SAMPLES = 100
VECTORS_PER_POINT = 20


@dataclass(frozen=True)
class SamplePlan:
    """
    Points and random probe vectors for one validation run.

    Attributes:
        points (np.ndarray): Shape (samples, n), uniform in the sample box
        vectors (np.ndarray): Shape (samples, k, n), standard normal
    """
    points: np.ndarray
    vectors: np.ndarray

    def __len__(self) -> int:
        return len(self.points)


def sample_points(box: Sequence[Sequence[float]], count: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform points in a product of closed intervals."""
    low = np.array([interval[0] for interval in box], dtype=float)
    high = np.array([interval[1] for interval in box], dtype=float)
    return rng.uniform(low, high, size=(count, len(box)))


def draw_plan(box: Sequence[Sequence[float]], samples: int, seed: int,
              vectors_per_point: int = VECTORS_PER_POINT) -> SamplePlan:
    """
    Draw sample points and probe vectors from a seeded generator.

    Raises:
        ValueError: If samples < 1
    """
    if samples < 1:
        raise ValueError(f"samples must be at least 1, got {samples}")
    rng = np.random.default_rng(seed)
    points = sample_points(box, samples, rng)
    vectors = rng.standard_normal((samples, vectors_per_point, len(box)))
    return SamplePlan(points, vectors)


class EvaluationCounter:
    """Thread-safe tally of point evaluations, logged once per run."""

    def __init__(self, label: str):
        self.label = label
        self._count = 0
        self._lock = threading.Lock()

    def tick(self) -> None:
        with self._lock:
            self._count += 1

    @property
    def count(self) -> int:
        with self._lock:
            return self._count


def map_ordered(fn: Callable[[T], R], items: Sequence[T], workers: int = 1, label: str = "samples") -> List[R]:
    """
    Apply fn to every item, preserving input order.

    Args:
        fn: Pure per-item function
        items: Inputs, typically sample indices or points
        workers: Thread count; 1 runs inline
        label: Name used in the progress log line

    Returns:
        List[R]: Results in the order of items
    """
    counter = EvaluationCounter(label)

    def run(item: T) -> R:
        result = fn(item)
        counter.tick()
        return result

    if workers <= 1 or len(items) <= 1:
        results = [run(item) for item in items]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run, items))
    logger.debug(f"Evaluated {counter.count} {label} with {max(workers, 1)} worker(s)")
    return results


def column_max(rows: Sequence[dict]) -> dict:
    """Merge per-point residual dicts by taking the maximum of each key."""
    merged: dict = {}
    for row in rows:
        for key, value in row.items():
            current = merged.get(key)
            if current is None or np.isnan(value) or (not np.isnan(current) and value > current):
                merged[key] = float(value)
    return merged
