"""Agent-side state machine: what gets played when an instruction is lost."""
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from src.bandit.channel import Delivered, Delivery
from src.utils.validators import ConfigurationError, validate_arm


class FallbackKind(str, Enum):
    LAST_RECEIVED = "last_received"
    RANDOM_ON_ERASURE = "random"
    FIXED_ARM = "fixed"


@dataclass
class AgentState:
    fallback: FallbackKind = FallbackKind.LAST_RECEIVED
    fixed_arm: Optional[int] = None
    last_arm: Optional[int] = None

    def __post_init__(self):
        self.fallback = FallbackKind(self.fallback)
        if self.fallback is FallbackKind.FIXED_ARM and (self.fixed_arm is None or self.fixed_arm < 1):
            raise ConfigurationError("fixed fallback needs fixed_arm >= 1", "fixed_arm")

    @property
    def initialized(self) -> bool:
        """Whether the agent holds an arm (delivered, or the lazy initial draw)."""
        return self.last_arm is not None


def agent_step(state: AgentState, delivery: Delivery, rng: np.random.Generator, n_arms: int) -> int:
    """Play one round and return the played arm.

    A delivered instruction is always played and remembered. On erasure the
    fallback decides; the uniform initial arm is only drawn on the first
    erasure that finds the agent uninitialized.
    """
    if isinstance(delivery, Delivered):
        state.last_arm = delivery.arm
        return delivery.arm

    if state.fallback is FallbackKind.FIXED_ARM:
        return validate_arm(state.fixed_arm, n_arms, "fixed_arm")

    if state.fallback is FallbackKind.RANDOM_ON_ERASURE:
        return int(rng.integers(1, n_arms + 1))

    if state.last_arm is None:
        state.last_arm = int(rng.integers(1, n_arms + 1))
    return state.last_arm
