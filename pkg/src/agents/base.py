from abc import ABC, abstractmethod
from typing import Optional

import numpy as np

from ..models.errors import ShapeError
from ..models.simulation import ActionSpace, Algorithm
from ..nn.network import QNetworkPair
from ..nn.optimizer import OptimizerState
from ..rl.policy import policy_probs, sample_action
from ..rl.replay import Experience, ReplayBuffer
from ..rl.training import train_step
from ..services.environment import empty_observation
from ..services.mean_field import uniform_mean_action

# Independent RNG streams per device, derived from (seed, device id, stream).
STREAM_ACT = 0
STREAM_TRAIN = 1
STREAM_EVAL_1 = 2
STREAM_EVAL_2 = 3


def derive_seed(seed: int, device_id: int, stream: int) -> int:
    """Deterministic 64-bit seed for one stream of one device."""
    sequence = np.random.SeedSequence(entropy=seed, spawn_key=(device_id, stream))
    return int(sequence.generate_state(1, dtype=np.uint64)[0])


def derive_rng(seed: int, device_id: int, stream: int) -> np.random.Generator:
    return np.random.default_rng(
        np.random.SeedSequence(entropy=seed, spawn_key=(device_id, stream))
    )


class LearningAgent(ABC):
    """
    Base class for the learning devices of the negotiation.

    Owns the device's networks, optimizers, replay buffer, its own last
    observation and the smoothed mean action of its neighbors. Subclasses only
    decide how the network input is built.
    """

    variant: Algorithm

    def __init__(
        self,
        device_id: int,
        space: ActionSpace,
        nets: QNetworkPair,
        buffer_capacity: int,
        learning_rate: float,
        seed: int,
    ):
        """
        Initialize the agent.

        Args:
            device_id: Index of the device in [0, N)
            space: Admissible requests of the device
            nets: Evaluation and target networks
            buffer_capacity: Replay buffer size
            learning_rate: Optimizer step size
            seed: Run seed; the device's RNG streams derive from it
        """
        if nets.dims[0] != self.input_dim:
            raise ShapeError(
                f"{type(self).__name__} expects input dim {self.input_dim}, "
                f"networks have {nets.dims[0]}"
            )
        self.device_id = device_id
        self.space = space
        self.nets = nets
        self.buffer = ReplayBuffer(buffer_capacity)
        self.optimizer_1 = OptimizerState.for_network(nets.eval_1, learning_rate)
        self.optimizer_2 = OptimizerState.for_network(nets.eval_2, learning_rate)
        self.obs = empty_observation()
        self.mean_iterate = uniform_mean_action()
        self.act_rng = derive_rng(seed, device_id, STREAM_ACT)
        self.train_rng = derive_rng(seed, device_id, STREAM_TRAIN)

    @property
    @abstractmethod
    def input_dim(self) -> int:
        """Width of the Q-network input."""
        pass

    @abstractmethod
    def build_inputs(self, obs: np.ndarray, mean: np.ndarray) -> np.ndarray:
        """
        Network input rows for a batch of observations and mean actions.

        Args:
            obs: (B, 10) own-request one-hots
            mean: (B, 10) mean actions

        Returns:
            (B, input_dim) array
        """
        pass

    def current_input(self) -> np.ndarray:
        return self.build_inputs(self.obs.reshape(1, -1), self.mean_iterate.reshape(1, -1))[0]

    def q_values(self) -> np.ndarray:
        """Acting values: elementwise minimum of the two evaluation networks."""
        x = self.current_input()
        return np.minimum(self.nets.eval_1.forward(x), self.nets.eval_2.forward(x))

    def action_probs(self, epsilon: float) -> np.ndarray:
        return policy_probs(self.q_values(), epsilon, self.space)

    def act(self, epsilon: float, rng: Optional[np.random.Generator] = None) -> int:
        """
        Choose a bandwidth request with the epsilon-greedy policy.

        Args:
            epsilon: Exploration rate
            rng: Random stream; defaults to the agent's own acting stream
        """
        return sample_action(self.action_probs(epsilon), rng or self.act_rng)

    def observe(self, action: int, reward: float, next_obs: np.ndarray,
                next_mean: np.ndarray) -> Experience:
        """
        Store the round's transition and advance the local view.

        Returns:
            The stored experience
        """
        experience = Experience(
            obs=self.obs,
            mean=self.mean_iterate,
            action=int(action),
            reward=float(reward),
            next_obs=np.asarray(next_obs, dtype=np.float64),
            next_mean=np.asarray(next_mean, dtype=np.float64),
        )
        self.buffer.push(experience)
        self.obs = experience.next_obs
        self.mean_iterate = experience.next_mean
        return experience

    def train(self, discount: float, target_rate: float, batch_size: int) -> Optional[float]:
        """Run one training step on the agent's own training stream."""
        return train_step(self, discount, target_rate, batch_size, self.train_rng)

    def describe(self) -> dict:
        return {
            "device_id": self.device_id,
            "variant": self.variant.value,
            "space": [self.space.lo, self.space.hi],
            "buffer_size": len(self.buffer),
            "steps": self.optimizer_1.step,
        }