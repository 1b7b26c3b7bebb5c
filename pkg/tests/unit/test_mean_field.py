"""
Unit tests for mean action estimation and smoothing.
"""

import numpy as np
import pytest

from src.models.errors import InvalidActionError, InvalidConfigError
from src.services.mean_field import (
    empirical_mean_action,
    is_on_simplex,
    mean_requested_bandwidth,
    population_mean_actions,
    soft_update_mean,
    uniform_mean_action,
)
from src.services.topology import build_neighbor_graph


def onehot(i):
    v = np.zeros(10)
    v[i] = 1.0
    return v


class TestEmpiricalMeanAction:
    def test_frequencies(self):
        m = empirical_mean_action([2, 2, 4])
        assert m[2] == pytest.approx(2 / 3)
        assert m[4] == pytest.approx(1 / 3)
        assert m.sum() == pytest.approx(1.0)

    def test_empty_is_uniform(self):
        assert np.allclose(empirical_mean_action([]), 0.1)

    def test_single_neighbor(self):
        assert empirical_mean_action([7]).tolist() == onehot(7).tolist()

    def test_permutation_invariant(self):
        assert np.array_equal(empirical_mean_action([1, 5, 5, 9]),
                              empirical_mean_action([5, 9, 1, 5]))

    def test_out_of_range_rejected(self):
        with pytest.raises(InvalidActionError):
            empirical_mean_action([3, 10])


class TestPopulationMeanActions:
    def test_matches_per_device_computation(self):
        rng = np.random.default_rng(8)
        graph = build_neighbor_graph(25, 6)
        actions = rng.integers(0, 10, size=25)
        rows = population_mean_actions(actions, graph.neighbor_matrix())
        for j in range(25):
            expected = empirical_mean_action(actions[graph.neighbors(j)])
            assert np.allclose(rows[j], expected)

    def test_no_neighbors_is_uniform(self):
        graph = build_neighbor_graph(4, 0)
        rows = population_mean_actions(np.array([1, 2, 3, 4]), graph.neighbor_matrix())
        assert rows.shape == (4, 10)
        assert np.allclose(rows, 0.1)


class TestSoftUpdateMean:
    def test_hard_update(self):
        observed = empirical_mean_action([3, 4])
        assert np.array_equal(soft_update_mean(onehot(0), observed, 0.0), observed)

    def test_fixed_point(self):
        prev = empirical_mean_action([1, 1, 8])
        for alpha in (0.0, 0.3, 0.9, 0.99):
            assert np.allclose(soft_update_mean(prev, prev, alpha), prev)

    def test_convex_combination(self):
        result = soft_update_mean(onehot(0), onehot(1), 0.2)
        assert result[:2] == pytest.approx([0.2, 0.8])
        assert np.all(result[2:] == 0.0)

    @pytest.mark.parametrize("alpha", [1.0, -0.1, 1.5])
    def test_invalid_alpha(self, alpha):
        with pytest.raises(InvalidConfigError):
            soft_update_mean(onehot(0), onehot(1), alpha)


def test_outputs_stay_on_simplex():
    rng = np.random.default_rng(42)
    m = uniform_mean_action()
    for _ in range(10_000):
        neighbors = rng.integers(0, 10, size=rng.integers(0, 12))
        observed = empirical_mean_action(neighbors)
        assert is_on_simplex(observed)
        m = soft_update_mean(m, observed, float(rng.uniform(0.0, 0.999)))
        assert is_on_simplex(m)


class TestMeanRequestedBandwidth:
    def test_examples(self):
        assert mean_requested_bandwidth(onehot(9)) == pytest.approx(9.0)
        assert mean_requested_bandwidth(uniform_mean_action()) == pytest.approx(4.5)
        m = np.zeros(10)
        m[2] = m[4] = 0.5
        assert mean_requested_bandwidth(m) == pytest.approx(3.0)
