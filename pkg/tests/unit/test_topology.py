"""
Unit tests for neighbor topology and action space construction.
"""

import pytest

from src.models.errors import InvalidConfigError
from src.models.simulation import ActionMode
from src.services.topology import build_neighbor_graph, sample_action_spaces


class TestBuildNeighborGraph:
    def test_ring_neighbors(self):
        graph = build_neighbor_graph(5, 2, seed=0)
        assert set(graph.neighbors(0)) == {1, 4}
        assert set(graph.neighbors(2)) == {1, 3}

    def test_no_neighbors(self):
        graph = build_neighbor_graph(5, 0, seed=0)
        assert all(graph.neighbors(j) == [] for j in range(5))

    def test_fully_connected(self):
        graph = build_neighbor_graph(300, 299, seed=0)
        for j in (0, 150, 299):
            assert set(graph.neighbors(j)) == set(range(300)) - {j}
        assert graph.is_symmetric()

    @pytest.mark.parametrize("n, k", [(10, 3), (7, 4), (60, 10), (2, 1)])
    def test_degree_and_self_exclusion(self, n, k):
        graph = build_neighbor_graph(n, k)
        for j in range(n):
            neighbors = graph.neighbors(j)
            assert len(neighbors) == k
            assert len(set(neighbors)) == k
            assert j not in neighbors

    @pytest.mark.parametrize("n, k", [(10, 4), (60, 10), (9, 8)])
    def test_symmetric_for_even_k_or_complete(self, n, k):
        assert build_neighbor_graph(n, k).is_symmetric()

    def test_odd_k_is_not_symmetric(self):
        graph = build_neighbor_graph(10, 3)
        assert not graph.is_symmetric()
        assert 2 in graph.neighbors(0)
        assert 0 not in graph.neighbors(2)

    def test_independent_of_seed(self):
        assert build_neighbor_graph(20, 6, seed=1) == build_neighbor_graph(20, 6, seed=99)

    @pytest.mark.parametrize("n, k", [(5, 5), (5, -1), (1, 1)])
    def test_invalid_degree(self, n, k):
        with pytest.raises(InvalidConfigError):
            build_neighbor_graph(n, k)


class TestSampleActionSpaces:
    def test_full_mode(self):
        spaces = sample_action_spaces(3, ActionMode.FULL, seed=5)
        assert [(s.lo, s.hi) for s in spaces] == [(0, 9)] * 3

    def test_full_mode_large(self):
        spaces = sample_action_spaces(1000, "Full", seed=0)
        assert len(spaces) == 1000
        assert all(s.size == 10 for s in spaces)

    def test_heterogeneous_ranges(self):
        spaces = sample_action_spaces(500, ActionMode.HETEROGENEOUS, seed=2)
        for space in spaces:
            assert space.lo in (0, 1, 2)
            assert space.hi - space.lo >= 3
            assert space.hi <= 9
        assert len({(s.lo, s.hi) for s in spaces}) > 1

    def test_heterogeneous_single_device(self):
        (space,) = sample_action_spaces(1, ActionMode.HETEROGENEOUS, seed=7)
        assert space.lo in (0, 1, 2)
        assert space.hi - space.lo >= 3

    def test_heterogeneous_is_seeded(self):
        first = sample_action_spaces(50, ActionMode.HETEROGENEOUS, seed=4)
        second = sample_action_spaces(50, ActionMode.HETEROGENEOUS, seed=4)
        assert first == second

    def test_zero_devices_rejected(self):
        with pytest.raises(InvalidConfigError):
            sample_action_spaces(0, ActionMode.FULL, seed=0)
