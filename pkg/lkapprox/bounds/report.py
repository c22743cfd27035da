"""Bounded-ratio reports for asymptotic order checks.

An order relation ``computed(n) ~ predicted(n)`` cannot be checked with unknown
constants, so each experiment tabulates the ratio over a window of ``n`` and judges it
from ``n0`` on, where ``n0`` is the smallest ``n`` after which the ratio's log2-slope
stays below :data:`SLOPE_TOL` per unit ``n``.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from lkapprox.spaces.errors import DomainError

logger = logging.getLogger(__name__)

SLOPE_TOL = 0.02
DEFAULT_LIMIT = 10.0

BOUNDED_ABOVE = "bounded-above"
BOUNDED_BELOW = "bounded-below"
TWO_SIDED = "two-sided"
KINDS = (BOUNDED_ABOVE, BOUNDED_BELOW, TWO_SIDED)


def select_n0(
    n_values: Sequence[int], ratios: Sequence[float], slope_tol: float = SLOPE_TOL
) -> int:
    """Smallest ``n`` from which every consecutive log2-slope of the ratio is below ``slope_tol``.

    The result never lies past the middle of the window, so a verdict always covers at
    least half of the tabulated points.
    """
    if len(n_values) != len(ratios) or not len(n_values):
        raise DomainError("n values and ratios must be nonempty and of equal length")

    log_ratios = np.log2(np.asarray(ratios, dtype=float))
    steps = np.diff(np.asarray(n_values, dtype=float))
    slopes = np.abs(np.diff(log_ratios)) / steps if len(steps) else np.zeros(0)

    start = len(slopes)
    while start > 0 and slopes[start - 1] < slope_tol:
        start -= 1
    start = min(start, (len(n_values) - 1) // 2)
    return int(n_values[start])


@dataclass
class RatioReport:
    """Tabulated ``computed / predicted`` ratios and their verdict.

    Attributes:
        name: Experiment that produced the report, e.g. "lemma1"
        kind: One of ``bounded-above``, ``bounded-below``, ``two-sided``
        limit: Allowed growth (above), decay (below) or spread (two-sided) of the ratio
        bound: Optional absolute cap ``K`` on the ratio for bounded-above reports
        n0: Start of the judged window; selected by :func:`select_n0` when not given
        params: Parameter echo written with the CSV
        skipped: ``n`` values left out (e.g. empty index sets)
    """

    name: str
    kind: str
    n_values: List[int]
    computed: List[float]
    predicted: List[float]
    limit: float = DEFAULT_LIMIT
    bound: Optional[float] = None
    n0: Optional[int] = None
    params: Dict[str, Any] = field(default_factory=dict)
    skipped: List[int] = field(default_factory=list)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"unknown report kind {self.kind!r}; expected one of {KINDS}")
        if not len(self.n_values) == len(self.computed) == len(self.predicted):
            raise DomainError("n values, computed and predicted columns differ in length")
        if not self.n_values:
            raise DomainError(f"report {self.name!r} has no rows")
        ratios = self.ratios
        if np.any(~np.isfinite(ratios)) or np.any(ratios <= 0):
            raise DomainError(f"report {self.name!r} has non-positive or non-finite ratios")
        if self.n0 is None:
            self.n0 = select_n0(self.n_values, ratios)

    @property
    def ratios(self) -> np.ndarray:
        return np.asarray(self.computed, dtype=float) / np.asarray(self.predicted, dtype=float)

    @property
    def window(self) -> tuple:
        return (self.n0, self.n_values[-1])

    @property
    def window_ratios(self) -> np.ndarray:
        return self.ratios[np.asarray(self.n_values) >= self.n0]

    @property
    def min_ratio(self) -> float:
        return float(np.min(self.window_ratios))

    @property
    def max_ratio(self) -> float:
        return float(np.max(self.window_ratios))

    @property
    def spread(self) -> float:
        return self.max_ratio / self.min_ratio

    @property
    def passed(self) -> bool:
        window = self.window_ratios
        if self.kind == BOUNDED_ABOVE:
            if self.bound is not None:
                return self.max_ratio <= self.bound
            return self.max_ratio / window[0] <= self.limit
        if self.kind == BOUNDED_BELOW:
            return self.min_ratio / window[0] >= 1.0 / self.limit
        return self.spread <= self.limit

    def verdict_line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (
            f"{self.name}: {self.kind} over n={self.window[0]}..{self.window[1]}, "
            f"ratio in [{self.min_ratio:.6g}, {self.max_ratio:.6g}] -> {status}"
        )

    def rows(self) -> List[tuple]:
        """``(n, computed, predicted, ratio)`` per tabulated ``n``."""
        return [
            (n, c, p, r)
            for n, c, p, r in zip(self.n_values, self.computed, self.predicted, self.ratios)
        ]


def log_progress(name: str, n: int, computed: float, predicted: float) -> None:
    ratio = computed / predicted if predicted else math.nan
    logger.info("%s n=%d computed=%.6e predicted=%.6e ratio=%.6g", name, n, computed, predicted, ratio)
