"""UCB index policy."""
import math

import numpy as np

from src.policies.base_policy import Policy


class UCB(Policy):
    """Optimism index: empirical mean + sqrt(scale * log t / n_a).

    Untried arms go first in ascending order; ties break to the lowest arm.
    """

    name = "ucb"

    def __init__(self, n_arms: int, horizon: int, exploration: float = 2.0):
        super().__init__(n_arms, horizon)
        self.exploration = exploration
        self.counts = np.zeros(n_arms, dtype=np.int64)
        self.sums = np.zeros(n_arms, dtype=float)

    @property
    def means(self) -> np.ndarray:
        with np.errstate(invalid="ignore", divide="ignore"):
            return np.where(self.counts > 0, self.sums / np.maximum(self.counts, 1), 0.0)

    def indices(self, t: int) -> np.ndarray:
        bonus = np.sqrt(self.exploration * math.log(t) / np.maximum(self.counts, 1))
        return np.where(self.counts > 0, self.means + bonus, np.inf)

    def _select(self, t: int) -> int:
        untried = np.flatnonzero(self.counts == 0)
        if untried.size:
            return int(untried[0]) + 1
        # argmax keeps the first maximum
        return int(np.argmax(self.indices(t))) + 1

    def _observe(self, arm: int, reward: float) -> None:
        self.counts[arm - 1] += 1
        self.sums[arm - 1] += reward
