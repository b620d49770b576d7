"""Batched successive arm elimination: plain SAE and Lingering SAE."""
import math
from abc import abstractmethod
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Sequence

import numpy as np

from config.logging_config import logger
from src.policies.base_policy import Policy
from src.policies.repeat_wrapper import repetition_parameter
from src.utils.validators import BatchOverflowError, ConfigurationError, PolicyStateError

MAX_BATCH_SIZE = 2 ** 63 - 1


def lsae_batch_size(alpha: int, i: int) -> int:
    """M_i = alpha * 4^i pulls per active arm in batch i."""
    if alpha < 1 or i < 1:
        raise ConfigurationError(f"need alpha >= 1 and i >= 1, got alpha={alpha}, i={i}", "alpha")
    size = alpha * 4 ** i
    if size > MAX_BATCH_SIZE:
        raise BatchOverflowError(f"batch size alpha*4^{i} exceeds 64-bit range", "i")
    return size


def second_half_mean(buffer: Sequence[float], size: Optional[int] = None) -> float:
    """Mean of the last half of a complete, even-length reward buffer."""
    n = len(buffer)
    if size is not None and n != size:
        raise PolicyStateError(f"buffer holds {n} rewards, expected {size}", "buffer")
    if n == 0 or n % 2:
        raise PolicyStateError(f"buffer length {n} is not a positive even number", "buffer")
    return float(np.mean(np.asarray(buffer[n // 2:], dtype=float)))


def lsae_threshold(n_arms: int, horizon: int, batch_size: int) -> float:
    """4 * sqrt(log(K T) / M_i), natural log."""
    return 4.0 * math.sqrt(math.log(n_arms * horizon) / batch_size)


def sae_threshold(n_arms: int, horizon: int, pulls: int) -> float:
    """2 * sqrt(log(K T) / (2 n)): twice the Hoeffding radius of an n-sample mean."""
    return 2.0 * math.sqrt(math.log(n_arms * horizon) / (2.0 * pulls))


def lsae_eliminate(active: Iterable[int], means: Mapping[int, float], threshold: float) -> List[int]:
    """Keep the arms whose deficit to the empirical best is at most ``threshold``."""
    active = list(active)
    if not active:
        raise PolicyStateError("active set is empty", "active")
    best = max(means[a] for a in active)
    return [a for a in active if best - means[a] <= threshold]


@dataclass(frozen=True)
class BatchSummary:
    batch: int
    batch_size: int
    means: Dict[int, float]
    threshold: float
    survivors: List[int]


class EliminationPolicy(Policy):
    """Pull every active arm ``batch_size(i)`` consecutive times, then eliminate.

    Arms are visited in ascending order. A batch cut short by the horizon is
    never evaluated.
    """

    def __init__(self, n_arms: int, horizon: int):
        super().__init__(n_arms, horizon)
        self.active: List[int] = list(range(1, n_arms + 1))
        self.batch = 1
        self.history: List[BatchSummary] = []
        self._position = 0
        self._size = self.batch_size(self.batch)
        self._buffers: Dict[int, List[float]] = {a: [] for a in self.active}

    @abstractmethod
    def batch_size(self, i: int) -> int:
        """Pulls per active arm in batch i."""

    @abstractmethod
    def estimate(self, buffer: Sequence[float]) -> float:
        """Mean estimate from a complete batch buffer."""

    @abstractmethod
    def threshold(self, i: int) -> float:
        """Elimination threshold closing batch i."""

    @property
    def current_arm(self) -> int:
        return self.active[self._position]

    def _select(self, t: int) -> int:
        return self.current_arm

    def _observe(self, arm: int, reward: float) -> None:
        block_arm = self.current_arm
        if arm != block_arm:
            raise PolicyStateError(f"reward for arm {arm} during the block of arm {block_arm}", "arm")

        buffer = self._buffers[block_arm]
        buffer.append(reward)
        if len(buffer) < self._size:
            return

        self._position += 1
        if self._position == len(self.active):
            self._close_batch()

    def _close_batch(self) -> None:
        means = {a: self.estimate(self._buffers[a]) for a in self.active}
        threshold = self.threshold(self.batch)
        survivors = lsae_eliminate(self.active, means, threshold)
        self.history.append(BatchSummary(self.batch, self._size, means, threshold, survivors))

        if len(survivors) < len(self.active):
            dropped = sorted(set(self.active) - set(survivors))
            logger.debug(f"{self.name} batch {self.batch}: eliminated {dropped} (threshold {threshold:.4f})")

        self.active = survivors
        self.batch += 1
        self._position = 0
        self._size = self.batch_size(self.batch)
        self._buffers = {a: [] for a in self.active}


class SuccessiveElimination(EliminationPolicy):
    """Plain SAE: 4^i pulls per active arm, full-buffer means."""

    name = "sae"

    def batch_size(self, i: int) -> int:
        size = 4 ** i
        if size > MAX_BATCH_SIZE:
            raise BatchOverflowError(f"batch size 4^{i} exceeds 64-bit range", "i")
        return size

    def estimate(self, buffer: Sequence[float]) -> float:
        return float(np.mean(buffer))

    def threshold(self, i: int) -> float:
        return sae_threshold(self.n_arms, self.horizon, self.batch_size(i))


class LingeringSAE(EliminationPolicy):
    """SAE that lingers alpha*4^i rounds per arm and discards the first half of every block."""

    name = "lsae"

    def __init__(self, n_arms: int, horizon: int, alpha: int):
        if alpha < 1:
            raise ConfigurationError(f"alpha must be >= 1, got {alpha}", "alpha")
        self.alpha = alpha
        super().__init__(n_arms, horizon)

    @classmethod
    def for_channel(cls, n_arms: int, horizon: int, epsilon: float) -> "LingeringSAE":
        return cls(n_arms, horizon, repetition_parameter(horizon, epsilon))

    def batch_size(self, i: int) -> int:
        return lsae_batch_size(self.alpha, i)

    def estimate(self, buffer: Sequence[float]) -> float:
        return second_half_mean(buffer, self._size)

    def threshold(self, i: int) -> float:
        return lsae_threshold(self.n_arms, self.horizon, self.batch_size(i))
