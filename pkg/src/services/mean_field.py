"""
Mean-field view of a device's neighborhood.

A mean action is a probability vector over the global action set: the average
of the neighbors' one-hot requests, optionally smoothed over time. Devices
without neighbors see the uniform distribution.
"""

from typing import Sequence

import numpy as np

from ..models.errors import InvalidActionError, InvalidConfigError
from ..models.simulation import NUM_ACTIONS

SIMPLEX_TOLERANCE = 1e-9

_ACTION_VALUES = np.arange(NUM_ACTIONS, dtype=np.float64)


def uniform_mean_action() -> np.ndarray:
    """Uniform distribution; the mean action of an empty neighborhood."""
    return np.full(NUM_ACTIONS, 1.0 / NUM_ACTIONS)


def is_on_simplex(m: np.ndarray, tol: float = SIMPLEX_TOLERANCE) -> bool:
    """Check that a vector is a probability distribution over the action set."""
    m = np.asarray(m, dtype=np.float64)
    return (
        m.shape == (NUM_ACTIONS,)
        and bool(np.all(m >= -tol))
        and abs(float(m.sum()) - 1.0) <= tol
    )


def empirical_mean_action(neighbor_actions: Sequence[int]) -> np.ndarray:
    """
    Empirical distribution of the neighbors' requests.

    Args:
        neighbor_actions: Requests of the devices in N(j)

    Returns:
        Vector whose entry i is the fraction of neighbors requesting i

    Raises:
        InvalidActionError: If a request lies outside {0, ..., 9}
    """
    actions = np.asarray(neighbor_actions, dtype=np.int64).ravel()
    if actions.size == 0:
        return uniform_mean_action()
    if actions.min() < 0 or actions.max() >= NUM_ACTIONS:
        raise InvalidActionError(f"Neighbor actions must lie in [0, {NUM_ACTIONS - 1}]")
    counts = np.bincount(actions, minlength=NUM_ACTIONS)
    return counts / actions.size


def population_mean_actions(actions: np.ndarray, neighbor_matrix: np.ndarray) -> np.ndarray:
    """
    Empirical mean action of every device at once.

    Args:
        actions: Joint action of length N
        neighbor_matrix: N x k array whose row j lists N(j)

    Returns:
        N x 10 matrix; row j equals empirical_mean_action(actions[N(j)])
    """
    n_devices, n_neighbors = neighbor_matrix.shape
    if n_neighbors == 0:
        return np.tile(uniform_mean_action(), (n_devices, 1))
    actions = np.asarray(actions, dtype=np.int64)
    if actions.min() < 0 or actions.max() >= NUM_ACTIONS:
        raise InvalidActionError(f"Actions must lie in [0, {NUM_ACTIONS - 1}]")
    rows = np.repeat(np.arange(n_devices), n_neighbors) * NUM_ACTIONS
    flat = rows + actions[neighbor_matrix].ravel()
    counts = np.bincount(flat, minlength=n_devices * NUM_ACTIONS)
    return counts.reshape(n_devices, NUM_ACTIONS) / n_neighbors


def soft_update_mean(prev: np.ndarray, observed: np.ndarray, smoothing: float) -> np.ndarray:
    """
    Exponentially smoothed mean action: alpha * prev + (1 - alpha) * observed.

    With alpha = 0 this is a hard update that returns ``observed``.

    Raises:
        InvalidConfigError: If alpha is outside [0, 1)
    """
    if not 0.0 <= smoothing < 1.0:
        raise InvalidConfigError(f"Smoothing factor must lie in [0, 1), got {smoothing}")
    if smoothing == 0.0:
        return np.array(observed, dtype=np.float64)
    return smoothing * np.asarray(prev) + (1.0 - smoothing) * np.asarray(observed)


def mean_requested_bandwidth(m: np.ndarray) -> float:
    """Expected number of requested subchannels under a mean action."""
    return float(np.dot(_ACTION_VALUES, m))
