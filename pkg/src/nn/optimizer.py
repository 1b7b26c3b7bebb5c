"""
Adaptive-moment optimizer for QNetwork parameters.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Tuple

import numpy as np

from ..models.errors import ShapeError, TrainingFault
from .network import Gradients, QNetwork

logger = logging.getLogger(__name__)

BETA_1 = 0.9
BETA_2 = 0.999
EPSILON = 1e-8


@dataclass
class OptimizerState:
    """First/second moment accumulators for every parameter array of one network."""
    learning_rate: float
    first_moments: List[np.ndarray] = field(default_factory=list)
    second_moments: List[np.ndarray] = field(default_factory=list)
    step: int = 0

    @classmethod
    def for_network(cls, net: QNetwork, learning_rate: float) -> "OptimizerState":
        """Zero moments shaped like the network's parameters."""
        params = net.parameters()
        return cls(
            learning_rate=learning_rate,
            first_moments=[np.zeros_like(p) for p in params],
            second_moments=[np.zeros_like(p) for p in params],
        )


def optimizer_step(net: QNetwork, grads: Gradients,
                   state: OptimizerState) -> Tuple[QNetwork, OptimizerState]:
    """
    Apply one bias-corrected adaptive-moment update in place.

    Args:
        net: Network to update
        grads: Gradients of the loss w.r.t. the network parameters
        state: Moment accumulators of this network

    Returns:
        The updated network and state

    Raises:
        TrainingFault: If a gradient or an updated parameter is not finite
        ShapeError: If gradient shapes do not match the parameters
    """
    params = net.parameters()
    grad_arrays = grads.arrays()
    if len(grad_arrays) != len(params):
        raise ShapeError(f"Got {len(grad_arrays)} gradient arrays for {len(params)} parameters")
    for p, g in zip(params, grad_arrays):
        if g.shape != p.shape:
            raise ShapeError(f"Gradient shape {g.shape} does not match parameter {p.shape}")
    if not grads.is_finite():
        raise TrainingFault("Non-finite gradient")

    state.step += 1
    correction_1 = 1.0 - BETA_1 ** state.step
    correction_2 = 1.0 - BETA_2 ** state.step
    for p, g, m, v in zip(params, grad_arrays, state.first_moments, state.second_moments):
        m *= BETA_1
        m += (1.0 - BETA_1) * g
        v *= BETA_2
        v += (1.0 - BETA_2) * g * g
        m_hat = m / correction_1
        v_hat = v / correction_2
        p -= state.learning_rate * m_hat / (np.sqrt(v_hat) + EPSILON)

    if not net.is_finite():
        raise TrainingFault("Non-finite parameter after optimizer step")
    return net, state
