"""
Per-agent learning machinery: policy, replay buffer and clipped double-Q training.
"""

from .policy import greedy_action, policy_probs, sample_action
from .replay import Experience, ExperienceBatch, ReplayBuffer
from .training import NOT_TRAINED, loss_and_grads, td_target, train_step

__all__ = [
    "Experience",
    "ExperienceBatch",
    "ReplayBuffer",
    "NOT_TRAINED",
    "greedy_action",
    "loss_and_grads",
    "policy_probs",
    "sample_action",
    "td_target",
    "train_step",
]
