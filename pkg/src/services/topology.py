"""
Device topology and action space construction.

Neighbors are chosen on a frequency-ordered ring: device j observes the
devices whose indices are cyclically nearest to its own.
"""

import logging
from typing import List

import numpy as np

from ..models.errors import InvalidConfigError
from ..models.simulation import ActionMode, ActionSpace, MAX_ACTION, NeighborGraph

logger = logging.getLogger(__name__)

# Heterogeneous spaces: lo in {0, 1, 2}, hi in {lo + 3, ..., 9}.
HETEROGENEOUS_MAX_LO = 2
HETEROGENEOUS_MIN_WIDTH = 3


def build_neighbor_graph(n_devices: int, n_neighbors: int, seed: int = 0) -> NeighborGraph:
    """
    Build the cyclic k-nearest ring topology.

    Device j gets ceil(k/2) neighbors above it and floor(k/2) below it, taken
    modulo N. The graph is symmetric for even k and for k = N-1; for odd k < N-1
    device j observes j + ceil(k/2) but that device does not observe j.

    The result depends only on (N, k); the seed is accepted so random
    topologies can be added without changing call sites.

    Args:
        n_devices: Number of devices N
        n_neighbors: Neighbors per device k
        seed: Reserved for randomized topologies

    Returns:
        NeighborGraph with |N(j)| = k for every device

    Raises:
        InvalidConfigError: If k is negative or k >= N
    """
    if n_devices < 1:
        raise InvalidConfigError(f"n_devices must be at least 1, got {n_devices}")
    if n_neighbors < 0 or n_neighbors >= n_devices:
        raise InvalidConfigError(
            f"n_neighbors must lie in [0, {n_devices - 1}], got {n_neighbors}"
        )

    up = (n_neighbors + 1) // 2
    down = n_neighbors // 2
    adjacency = {}
    for j in range(n_devices):
        above = [(j + d) % n_devices for d in range(1, up + 1)]
        below = [(j - d) % n_devices for d in range(1, down + 1)]
        adjacency[j] = above + below

    logger.debug(f"Built ring topology: N={n_devices}, k={n_neighbors}")
    return NeighborGraph(n_devices=n_devices, n_neighbors=n_neighbors, adjacency=adjacency)


def sample_action_spaces(n_devices: int, mode: ActionMode, seed: int) -> List[ActionSpace]:
    """
    Draw one action space per device.

    Args:
        n_devices: Number of devices N
        mode: Full gives every device [0, 9]; Heterogeneous draws lo uniformly
            from {0, 1, 2} and hi uniformly from {lo + 3, ..., 9}
        seed: Seed of the draw

    Returns:
        List of N action spaces
    """
    if n_devices < 1:
        raise InvalidConfigError(f"n_devices must be at least 1, got {n_devices}")

    mode = ActionMode(mode)
    if mode == ActionMode.FULL:
        return [ActionSpace(lo=0, hi=MAX_ACTION) for _ in range(n_devices)]

    rng = np.random.default_rng(seed)
    spaces = []
    for _ in range(n_devices):
        lo = int(rng.integers(0, HETEROGENEOUS_MAX_LO + 1))
        hi = int(rng.integers(lo + HETEROGENEOUS_MIN_WIDTH, MAX_ACTION + 1))
        spaces.append(ActionSpace(lo=lo, hi=hi))
    return spaces
