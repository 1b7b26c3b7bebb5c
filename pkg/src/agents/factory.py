"""
Construction of the agent population of a run.
"""

import logging
from typing import List

from ..models.simulation import ActionSpace, Algorithm, SimConfig
from ..nn.network import QNetworkPair
from .base import STREAM_EVAL_1, STREAM_EVAL_2, LearningAgent, derive_seed
from .independent_agent import IndependentAgent
from .mean_field_agent import MeanFieldAgent

logger = logging.getLogger(__name__)

AGENT_CLASSES = {
    Algorithm.MEAN_FIELD: MeanFieldAgent,
    Algorithm.IDQL: IndependentAgent,
}


def create_agent(device_id: int, space: ActionSpace, config: SimConfig) -> LearningAgent:
    """
    Create one agent with networks seeded per (run seed, device id, network index).

    Args:
        device_id: Index of the device
        space: The device's action space
        config: Run configuration

    Returns:
        A MeanFieldAgent or IndependentAgent depending on config.algorithm
    """
    nets = QNetworkPair.create(
        config.network_dims,
        derive_seed(config.seed, device_id, STREAM_EVAL_1),
        derive_seed(config.seed, device_id, STREAM_EVAL_2),
    )
    agent_class = AGENT_CLASSES[Algorithm(config.algorithm)]
    return agent_class(
        device_id=device_id,
        space=space,
        nets=nets,
        buffer_capacity=config.buffer_capacity,
        learning_rate=config.learning_rate,
        seed=config.seed,
    )


def create_population(spaces: List[ActionSpace], config: SimConfig) -> List[LearningAgent]:
    """Create one agent per action space, in device id order."""
    agents = [create_agent(j, space, config) for j, space in enumerate(spaces)]
    logger.debug(
        f"Created {len(agents)} {config.algorithm.value} agents with networks {config.network_dims}"
    )
    return agents
