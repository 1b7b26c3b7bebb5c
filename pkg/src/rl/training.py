"""
Clipped double-Q targets, loss and the per-agent training step.

Targets select the next action greedily from the first evaluation network and
bootstrap from the smaller of the two target networks at that action. The
negotiation is a continuing task, so every transition bootstraps.
"""

import logging
from typing import TYPE_CHECKING, List, Optional, Tuple, Union

import numpy as np

from ..models.errors import InvalidCallError, TrainingFault
from ..models.simulation import ActionSpace, NUM_ACTIONS
from ..nn.network import Gradients, QNetworkPair
from ..nn.optimizer import optimizer_step
from .replay import Experience, ExperienceBatch

if TYPE_CHECKING:
    from ..agents.base import LearningAgent

logger = logging.getLogger(__name__)

# Returned by train_step when the buffer holds fewer transitions than a batch.
NOT_TRAINED = None


def bootstrap_values(next_inputs: np.ndarray, nets: QNetworkPair,
                     mask: Optional[np.ndarray] = None
                     ) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Greedy next actions and both target estimates at those actions.

    Args:
        next_inputs: (B, input_dim) next-state network inputs
        nets: The agent's evaluation/target networks
        mask: Admissible-action mask over the global action set

    Returns:
        Tuple of (a_star, target_1 values, target_2 values), each of length B
    """
    if mask is None:
        mask = np.ones(NUM_ACTIONS, dtype=bool)
    q_eval = nets.eval_1.forward(next_inputs)
    a_star = np.argmax(np.where(mask, q_eval, -np.inf), axis=1)
    rows = np.arange(a_star.shape[0])
    q_1 = nets.target_1.forward(next_inputs)[rows, a_star]
    q_2 = nets.target_2.forward(next_inputs)[rows, a_star]
    return a_star, q_1, q_2


def td_targets(batch: ExperienceBatch, next_inputs: np.ndarray, nets: QNetworkPair,
               discount: float, mask: Optional[np.ndarray] = None) -> np.ndarray:
    """Clipped double-Q targets y = r + gamma * min(Q'_1, Q'_2)[a*] for a batch."""
    _, q_1, q_2 = bootstrap_values(next_inputs, nets, mask)
    return batch.reward + discount * np.minimum(q_1, q_2)


def td_target(exp: Experience, nets: QNetworkPair, discount: float,
              space: Optional[ActionSpace] = None, use_mean: bool = True) -> float:
    """
    Training target of a single transition.

    Args:
        exp: The transition
        nets: The agent's networks
        discount: Discount factor gamma
        space: Action space restricting the greedy next action (full set if None)
        use_mean: Whether the network input includes the mean action

    Returns:
        The target value y
    """
    batch = ExperienceBatch.from_experiences([exp])
    next_inputs = _inputs(batch.next_obs, batch.next_mean, use_mean)
    mask = space.mask() if space is not None else None
    return float(td_targets(batch, next_inputs, nets, discount, mask)[0])


def _inputs(obs: np.ndarray, mean: np.ndarray, use_mean: bool) -> np.ndarray:
    if use_mean:
        return np.concatenate([obs, mean], axis=1)
    return obs


def loss_and_grads(batch: Union[ExperienceBatch, List[Experience]], agent: "LearningAgent",
                   discount: float) -> Tuple[float, Tuple[Gradients, Gradients]]:
    """
    Clipped double-Q loss and gradients for both evaluation networks.

    The loss is the batch mean of sum_i (y - Q_i(input)[action])^2 with the
    targets held constant, so gradients reach only the taken action's output.

    Raises:
        InvalidCallError: If the batch is empty
    """
    if isinstance(batch, list):
        if not batch:
            raise InvalidCallError("loss_and_grads needs a non-empty batch")
        batch = ExperienceBatch.from_experiences(batch)
    size = len(batch)
    if size == 0:
        raise InvalidCallError("loss_and_grads needs a non-empty batch")

    nets = agent.nets
    inputs = agent.build_inputs(batch.obs, batch.mean)
    next_inputs = agent.build_inputs(batch.next_obs, batch.next_mean)
    targets = td_targets(batch, next_inputs, nets, discount, agent.space.mask())

    rows = np.arange(size)
    loss = 0.0
    grads = []
    for net in (nets.eval_1, nets.eval_2):
        q_taken = net.forward(inputs)[rows, batch.action]
        error = q_taken - targets
        loss += float(np.mean(error ** 2))
        d_output = np.zeros((size, NUM_ACTIONS))
        d_output[rows, batch.action] = 2.0 * error / size
        grads.append(net.backward(inputs, d_output))
    return loss, (grads[0], grads[1])


def train_step(agent: "LearningAgent", discount: float, target_rate: float,
               batch_size: int, rng: np.random.Generator) -> Optional[float]:
    """
    One optimization step of an agent's evaluation networks.

    Samples a batch without replacement, updates both evaluation networks once
    and soft-updates both target networks.

    Returns:
        The batch loss, or NOT_TRAINED when the buffer is smaller than a batch

    Raises:
        TrainingFault: If the loss, a gradient or a parameter is not finite
    """
    if len(agent.buffer) < batch_size:
        return NOT_TRAINED

    batch = agent.buffer.sample(batch_size, rng)
    loss, (grads_1, grads_2) = loss_and_grads(batch, agent, discount)
    if not np.isfinite(loss):
        raise TrainingFault("Non-finite loss", device_id=agent.device_id)

    try:
        optimizer_step(agent.nets.eval_1, grads_1, agent.optimizer_1)
        optimizer_step(agent.nets.eval_2, grads_2, agent.optimizer_2)
    except TrainingFault as exc:
        exc.device_id = agent.device_id
        raise
    agent.nets.soft_update_targets(target_rate)
    return loss
