"""Repeat-the-Instruction: run any policy on runs of alpha identical sends."""
import math
from typing import Callable, Optional

from src.policies.base_policy import Policy
from src.utils.helpers import ceil_log_ratio
from src.utils.validators import ConfigurationError, validate_horizon, validate_probability


def repetition_parameter(horizon: int, epsilon: float) -> int:
    """alpha = max(1, ceil(2 log T / log(1/epsilon))).

    The log ratio does not depend on the log base.
    """
    horizon = validate_horizon(horizon, minimum=1)
    epsilon = validate_probability(epsilon)
    if epsilon == 0.0 or horizon == 1:
        return 1
    return max(1, ceil_log_ratio(2.0 * math.log(horizon), math.log(1.0 / epsilon)))


class RepeatWrapper(Policy):
    """Sends the inner policy's choice for alpha consecutive rounds.

    Only the reward of the last round of each run reaches the inner policy;
    a trailing partial run forwards nothing.
    """

    def __init__(self, inner: Policy, alpha: int, horizon: int):
        if alpha < 1:
            raise ConfigurationError(f"alpha must be >= 1, got {alpha}", "alpha")
        self.name = f"{inner.name}+repeat"
        super().__init__(inner.n_arms, horizon)
        expected = math.ceil(horizon / alpha)
        if inner.horizon != expected:
            raise ConfigurationError(
                f"inner policy horizon {inner.horizon} != ceil(T/alpha) = {expected}", "horizon"
            )
        self.inner = inner
        self.alpha = alpha
        self.run_arm: Optional[int] = None
        self.inner_queries = 0
        self.forwarded = 0
        self._t = 0

    @classmethod
    def wrap(cls, factory: Callable[[int, int], Policy], n_arms: int, horizon: int,
             alpha: int) -> "RepeatWrapper":
        """Build the inner policy on the compressed horizon ceil(T/alpha) and wrap it."""
        return cls(factory(n_arms, math.ceil(horizon / alpha)), alpha, horizon)

    @property
    def run_pos(self) -> int:
        """Position of the last selected round inside its run, 1..alpha."""
        return (self._t - 1) % self.alpha + 1

    def _select(self, t: int) -> int:
        self._t = t
        if (t - 1) % self.alpha == 0:
            self.run_arm = self.inner.select((t - 1) // self.alpha + 1)
            self.inner_queries += 1
        return self.run_arm

    def _observe(self, arm: int, reward: float) -> None:
        self.observe_at(self._t, reward)

    def observe_at(self, t: int, reward: float) -> None:
        """Forward the round-t reward iff t closes a run."""
        if t % self.alpha == 0:
            self.inner.observe(self.run_arm, reward)
            self.forwarded += 1
