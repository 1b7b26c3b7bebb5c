"""
Unit tests for the replay buffer.
"""

import numpy as np
import pytest

from src.models.errors import InvalidCallError, InvalidConfigError
from src.rl.replay import Experience, ExperienceBatch, ReplayBuffer


def make_experience(action, reward=-0.5):
    obs = np.zeros(10)
    obs[action] = 1.0
    return Experience(
        obs=obs,
        mean=np.full(10, 0.1),
        action=action,
        reward=reward,
        next_obs=obs.copy(),
        next_mean=np.full(10, 0.1),
    )


class TestReplayBuffer:
    def test_push_grows_until_capacity(self):
        buffer = ReplayBuffer(3)
        for i in range(5):
            buffer.push(make_experience(i))
            assert len(buffer) == min(i + 1, 3)

    def test_oldest_evicted_first(self):
        buffer = ReplayBuffer(3)
        for i in range(5):
            buffer.push(make_experience(i, reward=-i / 10))
        assert [e.action for e in buffer] == [2, 3, 4]
        assert buffer[0].reward == pytest.approx(-0.2)
        assert buffer[-1].action == 4

    def test_index_out_of_range(self):
        buffer = ReplayBuffer(2)
        buffer.push(make_experience(1))
        with pytest.raises(IndexError):
            buffer[1]

    def test_sample_without_replacement(self, rng):
        buffer = ReplayBuffer(10)
        for i in range(10):
            buffer.push(make_experience(i))
        batch = buffer.sample(10, rng)
        assert len(batch) == 10
        assert sorted(batch.action.tolist()) == list(range(10))
        assert batch.obs.shape == (10, 10)

    def test_sample_after_wraparound(self, rng):
        buffer = ReplayBuffer(4)
        for i in range(7):
            buffer.push(make_experience(i))
        batch = buffer.sample(4, rng)
        assert sorted(batch.action.tolist()) == [3, 4, 5, 6]
        for row, action in zip(batch.obs, batch.action):
            assert row[action] == 1.0

    def test_sample_too_large(self, rng):
        buffer = ReplayBuffer(8)
        buffer.push(make_experience(0))
        with pytest.raises(InvalidCallError):
            buffer.sample(2, rng)

    def test_sample_is_seeded(self):
        buffer = ReplayBuffer(20)
        for i in range(20):
            buffer.push(make_experience(i % 10, reward=-i / 20))
        a = buffer.sample(5, np.random.default_rng(3))
        b = buffer.sample(5, np.random.default_rng(3))
        assert np.array_equal(a.reward, b.reward)

    def test_invalid_capacity(self):
        with pytest.raises(InvalidConfigError):
            ReplayBuffer(0)


def test_batch_from_no_experiences():
    with pytest.raises(InvalidCallError):
        ExperienceBatch.from_experiences([])
