"""
Unit tests for the learning agents and their construction.
"""

import numpy as np
import pytest

from src.agents import IndependentAgent, MeanFieldAgent, create_agent, create_population
from src.agents.base import STREAM_ACT, STREAM_EVAL_1, derive_seed
from src.models.errors import ShapeError
from src.models.simulation import ActionSpace, SimConfig
from src.nn.network import QNetworkPair
from src.services.mean_field import empirical_mean_action


def onehot(i):
    v = np.zeros(10)
    v[i] = 1.0
    return v


class TestFactory:
    def test_mean_field_population(self, small_config):
        spaces = [ActionSpace()] * small_config.n_devices
        agents = create_population(spaces, small_config)
        assert [a.device_id for a in agents] == list(range(small_config.n_devices))
        assert all(isinstance(a, MeanFieldAgent) for a in agents)
        assert agents[0].nets.dims == [20, 8, 8, 10]

    def test_idql_population(self, small_config):
        config = SimConfig(**{**small_config.model_dump(), "algorithm": "idql"})
        agent = create_agent(0, ActionSpace(), config)
        assert isinstance(agent, IndependentAgent)
        assert agent.nets.dims == [10, 8, 8, 10]

    def test_devices_get_distinct_networks(self, small_config):
        a = create_agent(0, ActionSpace(), small_config)
        b = create_agent(1, ActionSpace(), small_config)
        assert not np.array_equal(a.nets.eval_1.weights[0], b.nets.eval_1.weights[0])
        assert not np.array_equal(a.nets.eval_1.weights[0], a.nets.eval_2.weights[0])

    def test_same_seed_same_networks(self, small_config):
        a = create_agent(2, ActionSpace(), small_config)
        b = create_agent(2, ActionSpace(), small_config)
        for p, q in zip(a.nets.eval_1.parameters(), b.nets.eval_1.parameters()):
            assert np.array_equal(p, q)

    def test_input_dim_mismatch(self, idql_pair):
        with pytest.raises(ShapeError):
            MeanFieldAgent(device_id=0, space=ActionSpace(), nets=idql_pair,
                           buffer_capacity=10, learning_rate=0.001, seed=0)


def test_derived_seeds_differ_per_stream_and_device():
    seeds = {derive_seed(1, d, s) for d in range(5) for s in range(4)}
    assert len(seeds) == 20
    assert derive_seed(1, 0, STREAM_ACT) == derive_seed(1, 0, STREAM_ACT)
    assert derive_seed(1, 0, STREAM_EVAL_1) != derive_seed(2, 0, STREAM_EVAL_1)


class TestActing:
    def test_initial_state(self, mf_pair):
        agent = MeanFieldAgent(0, ActionSpace(), mf_pair, 10, 0.001, 0)
        assert np.all(agent.obs == 0.0)
        assert np.allclose(agent.mean_iterate, 0.1)
        assert agent.current_input().shape == (20,)

    def test_greedy_with_equal_networks(self, mf_pair):
        nets = QNetworkPair(mf_pair.eval_1, mf_pair.eval_1.copy())
        agent = MeanFieldAgent(0, ActionSpace(), nets, 10, 0.001, 0)
        expected = int(np.argmax(nets.eval_1.forward(agent.current_input())))
        assert {agent.act(0.0) for _ in range(20)} == {expected}

    def test_acting_values_are_elementwise_minimum(self, mf_pair):
        agent = MeanFieldAgent(0, ActionSpace(), mf_pair, 10, 0.001, 0)
        x = agent.current_input()
        expected = np.minimum(mf_pair.eval_1.forward(x), mf_pair.eval_2.forward(x))
        assert np.allclose(agent.q_values(), expected)

    def test_actions_stay_in_space(self, mf_pair):
        agent = MeanFieldAgent(0, ActionSpace(lo=2, hi=5), mf_pair, 10, 0.001, 0)
        assert {agent.act(0.7) for _ in range(300)} <= {2, 3, 4, 5}

    def test_idql_ignores_mean_action(self, idql_pair):
        agent = IndependentAgent(0, ActionSpace(), idql_pair, 10, 0.001, 0)
        agent.obs = onehot(3)
        before = agent.action_probs(0.3)
        agent.mean_iterate = onehot(9)
        assert np.array_equal(agent.action_probs(0.3), before)

    def test_mean_field_permutation_invariance(self, mf_pair):
        agent = MeanFieldAgent(0, ActionSpace(), mf_pair, 10, 0.001, 0)
        agent.obs = onehot(1)
        agent.mean_iterate = empirical_mean_action([4, 7, 7, 0])
        before = agent.action_probs(0.2)
        agent.mean_iterate = empirical_mean_action([7, 0, 4, 7])
        assert np.array_equal(agent.action_probs(0.2), before)

    def test_mean_field_uses_mean_action(self, mf_pair):
        agent = MeanFieldAgent(0, ActionSpace(), mf_pair, 10, 0.001, 0)
        before = agent.q_values()
        agent.mean_iterate = onehot(9)
        assert not np.allclose(agent.q_values(), before)


class TestObserve:
    def test_stores_transition_and_advances(self, mf_pair):
        agent = MeanFieldAgent(0, ActionSpace(), mf_pair, 10, 0.001, 0)
        next_mean = empirical_mean_action([2, 3])
        exp = agent.observe(4, -0.25, onehot(4), next_mean)
        assert len(agent.buffer) == 1
        assert np.all(exp.obs == 0.0)
        assert np.allclose(exp.mean, 0.1)
        assert exp.action == 4 and exp.reward == -0.25
        assert np.array_equal(agent.obs, onehot(4))
        assert np.array_equal(agent.mean_iterate, next_mean)

    def test_describe(self, mf_pair):
        agent = MeanFieldAgent(5, ActionSpace(lo=1, hi=7), mf_pair, 10, 0.001, 0)
        assert agent.describe() == {
            "device_id": 5,
            "variant": "MeanField",
            "space": [1, 7],
            "buffer_size": 0,
            "steps": 0,
        }
