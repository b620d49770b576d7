"""Per-agent repetition counts over heterogeneous erasure channels."""
import math
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from src.utils.helpers import ceil_log_ratio
from src.utils.validators import ConfigurationError, validate_horizon, validate_probability


def agent_repetitions(horizon: int, epsilon: float) -> int:
    """alpha_m = max(0, ceil(4 log T / log(1/eps_m)) - 1)."""
    horizon = validate_horizon(horizon, minimum=1)
    epsilon = validate_probability(epsilon, "epsilons")
    if epsilon == 0.0 or horizon == 1:
        return 0
    return max(0, ceil_log_ratio(4.0 * math.log(horizon), math.log(1.0 / epsilon)) - 1)


def agent_order(alphas: Sequence[int]) -> List[int]:
    """Agent indices (0-based) sorted ascending by alpha, ties by index."""
    return [int(m) for m in np.argsort(alphas, kind="stable")]


@dataclass(frozen=True)
class MultiAgentConfig:
    """M agents, each behind its own erasure channel."""

    epsilons: Tuple[float, ...]
    n_arms: int
    horizon: int

    def __post_init__(self):
        if not self.epsilons:
            raise ConfigurationError("at least one agent is required", "epsilons")
        object.__setattr__(
            self, "epsilons", tuple(validate_probability(e, "epsilons") for e in self.epsilons)
        )
        if self.n_arms < 1:
            raise ConfigurationError(f"need at least one arm, got {self.n_arms}", "n_arms")
        validate_horizon(self.horizon, minimum=0)

    @property
    def n_agents(self) -> int:
        return len(self.epsilons)

    @property
    def alphas(self) -> Tuple[int, ...]:
        horizon = max(self.horizon, 1)
        return tuple(agent_repetitions(horizon, e) for e in self.epsilons)

    def agent_order(self) -> List[int]:
        return agent_order(self.alphas)
