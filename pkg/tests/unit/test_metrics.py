"""
Unit tests for the exploration schedule and run statistics.
"""

import numpy as np
import pytest

from src.experiments.metrics import epsilon_schedule, normalized_series, summarize_window
from src.models.results import IterationMetrics


def record(i, loss=None, utilization=0.9, feasible=True, mean_action=7.5):
    return IterationMetrics(iteration=i, mean_loss=loss, utilization=utilization,
                            feasible=feasible, population_mean_action=mean_action, epsilon=0.0)


class TestEpsilonSchedule:
    @pytest.mark.parametrize("t, expected", [(0, 0.9), (5000, 0.0), (2500, 0.45), (7000, 0.0)])
    def test_examples(self, t, expected):
        assert epsilon_schedule(t, 5000, 0.9, 0.0) == pytest.approx(expected)

    def test_monotone(self):
        values = [epsilon_schedule(t, 100, 0.9, 0.1) for t in range(101)]
        assert all(a >= b for a, b in zip(values, values[1:]))

    def test_zero_total(self):
        assert epsilon_schedule(0, 0, 0.9, 0.2) == 0.2


class TestNormalizedSeries:
    @pytest.mark.parametrize("values, expected", [
        ([2, 4, 8], [0.25, 0.5, 1.0]),
        ([0, 0], [0.0, 0.0]),
        ([3.5], [1.0]),
        ([], []),
        ([-2, 1], [-1.0, 0.5]),
    ])
    def test_examples(self, values, expected):
        assert normalized_series(values) == pytest.approx(expected)


class TestSummarizeWindow:
    def test_short_run_has_no_summary(self):
        assert summarize_window([record(i) for i in range(5)], 10) is None

    def test_final_window_statistics(self):
        metrics = [record(i, utilization=0.1, mean_action=1.0) for i in range(10)]
        metrics += [
            record(10, loss=1.0, utilization=0.8, mean_action=7.0),
            record(11, loss=3.0, utilization=0.0, feasible=False, mean_action=9.0),
            record(12, loss=2.0, utilization=1.0, mean_action=8.0),
            record(13, loss=2.0, utilization=0.6, mean_action=8.0),
        ]
        summary = summarize_window(metrics, 4)
        assert summary.window == 4
        assert summary.mean_utilization == pytest.approx(0.6)
        assert summary.infeasible_fraction == pytest.approx(0.25)
        assert summary.mean_request == pytest.approx(8.0)
        assert summary.action_variance == pytest.approx(np.var([7.0, 9.0, 8.0, 8.0]))
        assert summary.loss_head is None
        assert summary.loss_tail == pytest.approx(2.0)
