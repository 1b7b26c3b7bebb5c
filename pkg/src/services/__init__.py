"""
Services module for the bandwidth negotiation simulator.

This module contains the topology builders, the negotiation environment and
the mean-field computations.
"""

from .environment import NegotiationEnvironment, allocate_channels, global_reward, step, utilization
from .mean_field import empirical_mean_action, mean_requested_bandwidth, soft_update_mean
from .topology import build_neighbor_graph, sample_action_spaces

__all__ = [
    "NegotiationEnvironment",
    "allocate_channels",
    "build_neighbor_graph",
    "empirical_mean_action",
    "global_reward",
    "mean_requested_bandwidth",
    "sample_action_spaces",
    "soft_update_mean",
    "step",
    "utilization",
]
