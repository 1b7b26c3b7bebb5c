"""
Long training runs checking the qualitative behaviour of the negotiation.

Every test here trains full populations for thousands of iterations and is
skipped unless RUN_SLOW=1.
"""

from statistics import median

import pytest

from src.experiments.experiment import run_experiment
from src.models.simulation import SimConfig
from src.services.environment import global_reward

SEEDS = (1, 2, 3)


def median_over_seeds(metric, **fields):
    summaries = [run_experiment(SimConfig(seed=seed, **fields)).summary for seed in SEEDS]
    return median(getattr(s, metric) for s in summaries)


@pytest.mark.slow
@pytest.mark.parametrize("n_devices", [60, 100])
def test_mean_field_reaches_high_utilization(n_devices):
    summaries = [
        run_experiment(SimConfig(n_devices=n_devices, seed=seed)).summary for seed in SEEDS
    ]
    assert median(s.mean_utilization for s in summaries) >= 0.90
    assert median(s.infeasible_fraction for s in summaries) <= 0.10
    assert all(s.loss_tail < s.loss_head for s in summaries)


@pytest.mark.slow
def test_single_device_learns_feasible_maximum():
    best = max(range(10), key=lambda a: global_reward([a], 10))
    assert best == 9

    result = run_experiment(SimConfig(n_devices=1, n_channels=10, n_neighbors=0, seed=1))
    assert result.summary.mean_utilization >= 0.89


@pytest.mark.slow
def test_mean_field_beats_independent_learners_at_scale():
    mean_field = median_over_seeds("mean_utilization", n_devices=300, algorithm="mf")
    independent = median_over_seeds("mean_utilization", n_devices=300, algorithm="idql")
    assert mean_field - independent >= 0.10


@pytest.mark.slow
def test_utilization_grows_with_neighbor_count():
    utilization = [
        median_over_seeds("mean_utilization", n_devices=300, n_neighbors=k) for k in (0, 10, 100)
    ]
    assert utilization[0] <= utilization[1] <= utilization[2]


@pytest.mark.slow
def test_smoothing_damps_request_variance():
    variances, utilization = [], []
    for alpha in (0.0, 0.5, 0.9):
        summaries = [
            run_experiment(
                SimConfig(n_devices=300, n_neighbors=10, smoothing=alpha, seed=seed)
            ).summary
            for seed in SEEDS
        ]
        variances.append(median(s.action_variance for s in summaries))
        utilization.append(median(s.mean_utilization for s in summaries))

    independent = median_over_seeds("mean_utilization", n_devices=300, algorithm="idql")
    assert variances[0] >= variances[1] >= variances[2]
    assert all(u > independent for u in utilization)
