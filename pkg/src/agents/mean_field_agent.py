import numpy as np

from ..models.simulation import Algorithm, NUM_ACTIONS
from .base import LearningAgent


class MeanFieldAgent(LearningAgent):
    """
    Device that conditions its Q-values on the smoothed mean action of its neighbors.

    Network input: own previous request (one-hot) followed by the mean action.
    """

    variant = Algorithm.MEAN_FIELD

    @property
    def input_dim(self) -> int:
        return 2 * NUM_ACTIONS

    def build_inputs(self, obs: np.ndarray, mean: np.ndarray) -> np.ndarray:
        return np.concatenate([obs, mean], axis=1)
