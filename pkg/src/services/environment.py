"""
Synchronous negotiation environment.

One call to ``step`` is one negotiation round: the AP receives the complete
joint request, evaluates the shared global reward and every device observes its
own request as a one-hot vector. The environment keeps no state between rounds.
"""

import logging
from typing import List, Sequence, Tuple

import numpy as np

from ..models.errors import InvalidActionError
from ..models.results import Allocation
from ..models.simulation import ActionSpace, NUM_ACTIONS

logger = logging.getLogger(__name__)


def _total_request(requests: Sequence[int]) -> int:
    return int(np.sum(np.asarray(requests, dtype=np.int64)))


def global_reward(requests: Sequence[int], n_channels: int) -> float:
    """
    Shared reward of a joint request.

    Returns -(1 - S/C) when the total request S fits into the C subchannels and
    -1 otherwise, so the reward lies in [-1, 0] and reaches 0 only at S = C.
    """
    total = _total_request(requests)
    if total <= n_channels:
        return -(1.0 - total / n_channels)
    return -1.0


def observation_onehot(action: int) -> np.ndarray:
    """One-hot encoding of a device's own request over the global action set."""
    obs = np.zeros(NUM_ACTIONS)
    obs[action] = 1.0
    return obs


def empty_observation() -> np.ndarray:
    """Observation of a device that has not acted yet."""
    return np.zeros(NUM_ACTIONS)


def step(requests: Sequence[int], n_channels: int) -> Tuple[float, List[np.ndarray]]:
    """
    Evaluate one synchronous round.

    Args:
        requests: Joint action, one subchannel count per device
        n_channels: Number of subchannels C

    Returns:
        Tuple of the reward shared by every device and one observation per device
    """
    reward = global_reward(requests, n_channels)
    observations = [observation_onehot(int(a)) for a in requests]
    return reward, observations


def allocate_channels(requests: Sequence[int], n_channels: int) -> Allocation:
    """
    Divide the data channel according to the final requests.

    Devices receive consecutive ranges in ascending id order starting at
    subchannel 0. When the requests do not fit, an infeasible allocation is
    returned and nothing is assigned.
    """
    if _total_request(requests) > n_channels:
        return Allocation(n_channels=n_channels, feasible=False)

    assignment = {}
    cursor = 0
    for device, request in enumerate(requests):
        assignment[device] = (cursor, cursor + int(request))
        cursor += int(request)
    return Allocation(n_channels=n_channels, feasible=True, assignment=assignment)


def utilization(requests: Sequence[int], n_channels: int) -> Tuple[float, bool]:
    """
    Channel utilization of a round.

    Returns:
        Tuple of (rate, feasible); an infeasible round scores a rate of 0
    """
    total = _total_request(requests)
    feasible = total <= n_channels
    rate = total / n_channels if feasible else 0.0
    return rate, feasible


class NegotiationEnvironment:
    """
    Negotiation environment bound to a population of action spaces.

    Adds request validation on top of the pure round functions so invalid joint
    actions never reach the reward computation.
    """

    def __init__(self, spaces: List[ActionSpace], n_channels: int):
        """
        Initialize the environment.

        Args:
            spaces: One action space per device
            n_channels: Number of subchannels C
        """
        self.spaces = spaces
        self.n_channels = n_channels
        self._lo = np.array([s.lo for s in spaces], dtype=np.int64)
        self._hi = np.array([s.hi for s in spaces], dtype=np.int64)

    @property
    def n_devices(self) -> int:
        return len(self.spaces)

    def validate(self, requests: Sequence[int]) -> np.ndarray:
        """
        Check a joint action against the device action spaces.

        Raises:
            InvalidActionError: If the length is wrong or any request is out of range
        """
        actions = np.asarray(requests, dtype=np.int64)
        if actions.shape != (self.n_devices,):
            raise InvalidActionError(
                f"Joint action has {actions.size} entries, expected {self.n_devices}"
            )
        bad = np.flatnonzero((actions < self._lo) | (actions > self._hi))
        if bad.size:
            device = int(bad[0])
            raise InvalidActionError(
                f"Device {device} requested {int(actions[device])}, outside "
                f"[{self.spaces[device].lo}, {self.spaces[device].hi}]"
            )
        return actions

    def step(self, requests: Sequence[int]) -> Tuple[float, List[np.ndarray]]:
        """Validate the joint action and evaluate the round."""
        actions = self.validate(requests)
        return step(actions, self.n_channels)

    def utilization(self, requests: Sequence[int]) -> Tuple[float, bool]:
        """Channel utilization of a validated joint action."""
        return utilization(self.validate(requests), self.n_channels)

    def allocate(self, requests: Sequence[int]) -> Allocation:
        """AP allocation for a validated joint action."""
        return allocate_channels(self.validate(requests), self.n_channels)
