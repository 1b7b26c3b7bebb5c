"""
Schedules and summary statistics of experiment runs.
"""

import math
from typing import List, Optional, Sequence

import numpy as np

from ..models.results import IterationMetrics, WindowSummary

# Share of the run used for the head/tail loss comparison.
LOSS_TREND_FRACTION = 0.1


def epsilon_schedule(t: int, total: int, epsilon_start: float, epsilon_end: float) -> float:
    """
    Linearly annealed exploration rate.

    Interpolates from ``epsilon_start`` at t=0 to ``epsilon_end`` at t=total;
    t beyond total is clamped to ``epsilon_end``.
    """
    if total <= 0 or t >= total:
        return epsilon_end
    if t <= 0:
        return epsilon_start
    return epsilon_start + (epsilon_end - epsilon_start) * (t / total)


def normalized_series(values: Sequence[float]) -> List[float]:
    """
    Divide a series by its largest absolute value.

    An all-zero series maps to all zeros.
    """
    array = np.asarray(values, dtype=np.float64)
    if array.size == 0:
        return []
    scale = float(np.max(np.abs(array)))
    if scale == 0.0:
        return [0.0] * array.size
    return (array / scale).tolist()


def _nan_free_mean(values: Sequence[Optional[float]]) -> Optional[float]:
    clean = [v for v in values if v is not None and not math.isnan(v)]
    if not clean:
        return None
    return float(np.mean(clean))


def summarize_window(metrics: List[IterationMetrics], window: int) -> Optional[WindowSummary]:
    """
    Final-window statistics of a run.

    Returns:
        WindowSummary over the last ``window`` iterations, or None when the run
        is shorter than the window
    """
    if len(metrics) < window:
        return None

    tail = metrics[-window:]
    utilization = np.array([m.utilization for m in tail])
    infeasible = np.array([not m.feasible for m in tail], dtype=np.float64)
    population_mean = np.array([m.population_mean_action for m in tail])

    trend = max(1, int(len(metrics) * LOSS_TREND_FRACTION))
    return WindowSummary(
        window=window,
        mean_utilization=float(utilization.mean()),
        infeasible_fraction=float(infeasible.mean()),
        action_variance=float(population_mean.var()),
        mean_request=float(population_mean.mean()),
        loss_head=_nan_free_mean([m.mean_loss for m in metrics[:trend]]),
        loss_tail=_nan_free_mean([m.mean_loss for m in metrics[-trend:]]),
    )
