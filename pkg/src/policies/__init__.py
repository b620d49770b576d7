"""Learner-side bandit policies."""
from src.policies.base_policy import Policy
from src.policies.ucb import UCB
from src.policies.repeat_wrapper import RepeatWrapper, repetition_parameter
from src.policies.elimination import (
    EliminationPolicy, SuccessiveElimination, LingeringSAE,
    lsae_batch_size, second_half_mean, lsae_threshold, sae_threshold, lsae_eliminate
)

__all__ = [
    'Policy', 'UCB', 'RepeatWrapper', 'repetition_parameter',
    'EliminationPolicy', 'SuccessiveElimination', 'LingeringSAE',
    'lsae_batch_size', 'second_half_mean', 'lsae_threshold', 'sae_threshold', 'lsae_eliminate'
]
