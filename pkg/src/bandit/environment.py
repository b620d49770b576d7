"""Bandit instances, reward sampling and regret accounting."""
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Tuple

import numpy as np

from src.utils.validators import ArmIndexError, ConfigurationError, DimensionError, validate_arm, validate_means, validate_probability


class DistKind(str, Enum):
    BERNOULLI = "bernoulli"
    DETERMINISTIC = "deterministic"


@dataclass(frozen=True)
class BanditInstance:
    """Ground-truth arm means plus the reward distribution family.

    Arms are indexed 1..K. Gaps are derived, never stored.
    """

    means: Tuple[float, ...]
    dist_kind: DistKind = DistKind.BERNOULLI

    def __post_init__(self):
        object.__setattr__(self, "means", tuple(validate_means(self.means)))
        try:
            object.__setattr__(self, "dist_kind", DistKind(self.dist_kind))
        except ValueError:
            raise ConfigurationError(f"unknown reward distribution {self.dist_kind!r}", "dist_kind")

    @property
    def n_arms(self) -> int:
        return len(self.means)

    @cached_property
    def mean_array(self) -> np.ndarray:
        return np.asarray(self.means, dtype=float)

    @property
    def best_mean(self) -> float:
        return max(self.means)

    @cached_property
    def gaps(self) -> np.ndarray:
        """Suboptimality gap of every arm, position a-1 for arm a."""
        return self.best_mean - self.mean_array

    @property
    def best_arms(self) -> Tuple[int, ...]:
        return tuple(a for a, mu in enumerate(self.means, start=1) if mu == self.best_mean)


def sample_reward(instance: BanditInstance, arm: int, rng: np.random.Generator) -> float:
    """Draw the reward of one pull.

    Bernoulli instances consume exactly one uniform; Deterministic ones consume none.
    """
    validate_arm(arm, instance.n_arms)
    mean = instance.means[arm - 1]
    if instance.dist_kind is DistKind.DETERMINISTIC:
        return mean
    return 1.0 if rng.random() < mean else 0.0


def _played_array(trace, instance: BanditInstance) -> np.ndarray:
    if trace.n_arms != instance.n_arms:
        raise DimensionError(
            f"trace has K={trace.n_arms} arms but instance has K={instance.n_arms}", "n_arms"
        )
    played = np.asarray(trace.played, dtype=np.int64)
    if played.size and (played.min() < 1 or played.max() > instance.n_arms):
        raise ArmIndexError(f"played arm outside [1..{instance.n_arms}]", "played")
    return played


def compute_regret(trace, instance: BanditInstance) -> float:
    """Cumulative regret of the arms the agent(s) actually played.

    Accepts any trace exposing ``n_arms`` and ``played`` (one row per agent
    for multi-agent traces). Sent arms never enter the sum.
    """
    played = _played_array(trace, instance)
    if played.size == 0:
        return 0.0
    return float(instance.gaps[played - 1].sum())


def regret_curve(trace, instance: BanditInstance) -> np.ndarray:
    """Cumulative regret after each round, summed over agents."""
    played = _played_array(trace, instance)
    per_round = instance.gaps[played - 1] if played.size else np.zeros(played.shape)
    if per_round.ndim == 2:
        per_round = per_round.sum(axis=0)
    return np.cumsum(per_round)


def shifted_mean(instance: BanditInstance, arm: int, epsilon: float) -> float:
    """Expected observed reward of ``arm`` when erased rounds play a uniform arm."""
    epsilon = validate_probability(epsilon)
    validate_arm(arm, instance.n_arms)
    return (1.0 - epsilon) * instance.means[arm - 1] + epsilon * sum(instance.means) / instance.n_arms
