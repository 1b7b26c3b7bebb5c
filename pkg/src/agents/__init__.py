"""
Learning agents: one per device.
"""

from .base import LearningAgent
from .factory import create_agent, create_population
from .independent_agent import IndependentAgent
from .mean_field_agent import MeanFieldAgent

__all__ = [
    "LearningAgent",
    "IndependentAgent",
    "MeanFieldAgent",
    "create_agent",
    "create_population",
]
