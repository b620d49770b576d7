"""Validation utility functions and the project exception hierarchy."""
import math
from typing import Iterable, List, Optional


class ErasureBanditError(Exception):
    """Base error carrying an optional offending field."""

    def __init__(self, message: str, field: Optional[str] = None):
        self.message = message
        self.field = field
        super().__init__(self.message)


class ConfigurationError(ErasureBanditError, ValueError):
    """Invalid parameters (probabilities, agent counts, policy combinations)."""


class ConfigParseError(ConfigurationError):
    """Missing, unknown or malformed key in a config document."""


class ArmIndexError(ErasureBanditError, IndexError):
    """Arm index outside [1..K]."""


class DimensionError(ErasureBanditError, ValueError):
    """Trace and instance disagree on the number of arms."""


class RewardDomainError(ErasureBanditError, ValueError):
    """Reward outside [0, 1]."""


class PolicyStateError(ErasureBanditError, RuntimeError):
    """Policy asked to act on inconsistent internal state."""


class BatchOverflowError(ErasureBanditError, ArithmeticError):
    """Batch size no longer representable against the horizon."""


class SchedulingInvariantError(ErasureBanditError, RuntimeError):
    """Batch schedule violates a packing invariant."""


class NumericError(ErasureBanditError, ArithmeticError):
    """Root bracketing or convergence failure."""


class ResultsWriteError(ErasureBanditError, OSError):
    """Results file could not be written."""


def validate_probability(value: float, field: str = "epsilon") -> float:
    """Validate an erasure probability lies in [0, 1).

    Returns the value as float, raises ConfigurationError otherwise.
    """
    try:
        value = float(value)
    except (TypeError, ValueError):
        raise ConfigurationError(f"{field} must be a number, got {value!r}", field)

    if math.isnan(value) or value < 0.0 or value >= 1.0:
        raise ConfigurationError(
            f"{field} must lie in [0, 1) (erasure probability), got {value}", field
        )
    return value


def validate_means(means: Iterable[float], field: str = "means") -> List[float]:
    """Validate arm means: non-empty, every entry in [0, 1]."""
    values = [float(m) for m in means]
    if not values:
        raise ConfigurationError("at least one arm mean is required", field)

    for idx, mean in enumerate(values, start=1):
        if math.isnan(mean) or mean < 0.0 or mean > 1.0:
            raise ConfigurationError(f"mean of arm {idx} must lie in [0, 1], got {mean}", field)
    return values


def validate_arm(arm: int, n_arms: int, field: str = "arm") -> int:
    """Validate a 1-based arm index."""
    if not 1 <= arm <= n_arms:
        raise ArmIndexError(f"{field} {arm} outside [1..{n_arms}]", field)
    return arm


def validate_reward(reward: float) -> float:
    """Validate a reward is supported on [0, 1]."""
    if not 0.0 <= reward <= 1.0:
        raise RewardDomainError(f"reward {reward} outside [0, 1]", "reward")
    return reward


def validate_horizon(horizon: int, field: str = "T", minimum: int = 0) -> int:
    """Validate an integral horizon."""
    if int(horizon) != horizon or horizon < minimum:
        raise ConfigurationError(f"{field} must be an integer >= {minimum}, got {horizon}", field)
    return int(horizon)
