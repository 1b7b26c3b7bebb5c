"""
Self-contained feed-forward networks with manual backpropagation.
"""

from .gradcheck import gradient_check
from .network import Gradients, QNetwork, QNetworkPair, init_network, soft_update_params
from .optimizer import OptimizerState, optimizer_step

__all__ = [
    "Gradients",
    "QNetwork",
    "QNetworkPair",
    "OptimizerState",
    "gradient_check",
    "init_network",
    "optimizer_step",
    "soft_update_params",
]
