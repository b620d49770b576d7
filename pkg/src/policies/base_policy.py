"""Base policy class with common functionality."""
from abc import ABC, abstractmethod

from config.logging_config import logger
from src.utils.validators import ConfigurationError, PolicyStateError, validate_reward


class Policy(ABC):
    """Learner-side bandit algorithm.

    Subclasses implement ``_select`` and ``_observe``; the public methods
    guard the horizon and the reward domain.
    """

    name = "policy"

    def __init__(self, n_arms: int, horizon: int):
        if n_arms < 1:
            raise ConfigurationError(f"need at least one arm, got {n_arms}", "n_arms")
        if horizon < 1:
            raise ConfigurationError(f"horizon must be >= 1, got {horizon}", "horizon")
        self.n_arms = n_arms
        self.horizon = horizon
        self.n_observations = 0
        logger.debug(f"Initialized policy: {self.name} (K={n_arms}, H={horizon})")

    @abstractmethod
    def _select(self, t: int) -> int:
        """Arm to send at (policy-local) round t. Must be implemented by subclasses."""

    @abstractmethod
    def _observe(self, arm: int, reward: float) -> None:
        """Consume one reward. Must be implemented by subclasses."""

    def select(self, t: int) -> int:
        if t < 1:
            raise PolicyStateError(f"rounds are 1-based, got t={t}", "t")
        if self.n_observations >= self.horizon:
            raise PolicyStateError(
                f"{self.name} already observed its horizon of {self.horizon} rounds", "t"
            )
        return self._select(t)

    def observe(self, arm: int, reward: float) -> None:
        validate_reward(reward)
        self.n_observations += 1
        self._observe(arm, reward)
