"""
Annealed epsilon-greedy policy over per-device action spaces.
"""

import numpy as np

from ..models.simulation import ActionSpace, NUM_ACTIONS


def greedy_action(q_values: np.ndarray, space: ActionSpace) -> int:
    """Highest-valued admissible action; ties go to the lowest index."""
    q = np.asarray(q_values, dtype=np.float64)
    masked = np.where(space.mask(), q, -np.inf)
    return int(np.argmax(masked))


def policy_probs(q_values: np.ndarray, epsilon: float, space: ActionSpace) -> np.ndarray:
    """
    Epsilon-greedy action distribution.

    The greedy admissible action receives 1 - eps + eps/|A|, every other
    admissible action eps/|A| and actions outside the device's space 0.

    Args:
        q_values: One value per global action index
        epsilon: Exploration rate in [0, 1]
        space: The device's action space A

    Returns:
        Probability vector over the global action set
    """
    probs = np.zeros(NUM_ACTIONS)
    probs[space.lo:space.hi + 1] = epsilon / space.size
    probs[greedy_action(q_values, space)] += 1.0 - epsilon
    return probs


def sample_action(probs: np.ndarray, rng: np.random.Generator) -> int:
    """
    Draw an action index from a categorical distribution.

    Uses exactly one uniform draw from ``rng`` per call.
    """
    cumulative = np.cumsum(probs)
    u = rng.random() * cumulative[-1]
    index = int(np.searchsorted(cumulative, u, side='right'))
    if index >= NUM_ACTIONS or probs[index] <= 0.0:
        # u landed on the rounding edge of the last bucket
        index = int(np.flatnonzero(probs > 0.0)[-1])
    return index
