import numpy as np

from ..models.simulation import Algorithm, NUM_ACTIONS
from .base import LearningAgent


class IndependentAgent(LearningAgent):
    """
    Independent deep Q-learning baseline.

    Treats every other device as part of the environment: the network sees only
    the device's own previous request and ignores the mean action.
    """

    variant = Algorithm.IDQL

    @property
    def input_dim(self) -> int:
        return NUM_ACTIONS

    def build_inputs(self, obs: np.ndarray, mean: np.ndarray) -> np.ndarray:
        return np.asarray(obs)
