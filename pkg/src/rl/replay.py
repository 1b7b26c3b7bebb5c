"""
Bounded FIFO replay buffer.

Transitions are stored column-wise in preallocated arrays so sampling a batch
is a single fancy-indexing operation per field.
"""

from dataclasses import dataclass
from typing import Iterator, List

import numpy as np

from ..models.errors import InvalidCallError, InvalidConfigError
from ..models.simulation import NUM_ACTIONS


@dataclass(frozen=True)
class Experience:
    """One transition <obs, mean, action, reward, next_obs, next_mean>."""
    obs: np.ndarray
    mean: np.ndarray
    action: int
    reward: float
    next_obs: np.ndarray
    next_mean: np.ndarray


@dataclass(frozen=True)
class ExperienceBatch:
    """Column-stacked transitions; every array has the batch as leading axis."""
    obs: np.ndarray
    mean: np.ndarray
    action: np.ndarray
    reward: np.ndarray
    next_obs: np.ndarray
    next_mean: np.ndarray

    def __len__(self) -> int:
        return int(self.action.shape[0])

    @classmethod
    def from_experiences(cls, experiences: List[Experience]) -> "ExperienceBatch":
        if not experiences:
            raise InvalidCallError("Cannot build a batch from no experiences")
        return cls(
            obs=np.stack([e.obs for e in experiences]),
            mean=np.stack([e.mean for e in experiences]),
            action=np.array([e.action for e in experiences], dtype=np.int64),
            reward=np.array([e.reward for e in experiences], dtype=np.float64),
            next_obs=np.stack([e.next_obs for e in experiences]),
            next_mean=np.stack([e.next_mean for e in experiences]),
        )


class ReplayBuffer:
    """Ring buffer holding at most ``capacity`` transitions; the oldest is evicted first."""

    def __init__(self, capacity: int):
        if capacity < 1:
            raise InvalidConfigError(f"Buffer capacity must be positive, got {capacity}")
        self.capacity = capacity
        self._obs = np.zeros((capacity, NUM_ACTIONS))
        self._mean = np.zeros((capacity, NUM_ACTIONS))
        self._action = np.zeros(capacity, dtype=np.int64)
        self._reward = np.zeros(capacity)
        self._next_obs = np.zeros((capacity, NUM_ACTIONS))
        self._next_mean = np.zeros((capacity, NUM_ACTIONS))
        self._next_slot = 0
        self._size = 0

    def __len__(self) -> int:
        return self._size

    def push(self, experience: Experience) -> None:
        """Append a transition, evicting the oldest one when full."""
        i = self._next_slot
        self._obs[i] = experience.obs
        self._mean[i] = experience.mean
        self._action[i] = experience.action
        self._reward[i] = experience.reward
        self._next_obs[i] = experience.next_obs
        self._next_mean[i] = experience.next_mean
        self._next_slot = (i + 1) % self.capacity
        self._size = min(self._size + 1, self.capacity)

    def _slot(self, position: int) -> int:
        # position 0 is the oldest stored transition
        start = (self._next_slot - self._size) % self.capacity
        return (start + position) % self.capacity

    def __getitem__(self, position: int) -> Experience:
        if not -self._size <= position < self._size:
            raise IndexError(f"Replay position {position} out of range for size {self._size}")
        i = self._slot(position % self._size)
        return Experience(
            obs=self._obs[i].copy(),
            mean=self._mean[i].copy(),
            action=int(self._action[i]),
            reward=float(self._reward[i]),
            next_obs=self._next_obs[i].copy(),
            next_mean=self._next_mean[i].copy(),
        )

    def __iter__(self) -> Iterator[Experience]:
        """Iterate from the oldest to the newest transition."""
        for position in range(self._size):
            yield self[position]

    def sample(self, batch_size: int, rng: np.random.Generator) -> ExperienceBatch:
        """
        Uniform sample without replacement.

        Raises:
            InvalidCallError: If fewer than ``batch_size`` transitions are stored
        """
        if batch_size > self._size:
            raise InvalidCallError(
                f"Cannot sample {batch_size} transitions from a buffer of {self._size}"
            )
        positions = rng.choice(self._size, size=batch_size, replace=False)
        slots = (self._slot(0) + positions) % self.capacity
        return ExperienceBatch(
            obs=self._obs[slots],
            mean=self._mean[slots],
            action=self._action[slots],
            reward=self._reward[slots],
            next_obs=self._next_obs[slots],
            next_mean=self._next_mean[slots],
        )
