"""Erasure channel between the learner and an agent."""
from dataclasses import dataclass
from typing import Union

import numpy as np

from src.utils.validators import validate_probability


@dataclass(frozen=True)
class Delivered:
    arm: int


@dataclass(frozen=True)
class Erased:
    pass


ERASED = Erased()

Delivery = Union[Delivered, Erased]


@dataclass(frozen=True)
class ErasureChannel:
    """Memoryless channel that drops each instruction with probability epsilon.

    No feedback: only the receiving agent learns about an erasure.
    """

    epsilon: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "epsilon", validate_probability(self.epsilon))

    def transmit(self, instruction: int, rng: np.random.Generator) -> Delivery:
        """Send one instruction; consumes exactly one uniform draw."""
        if rng.random() < self.epsilon:
            return ERASED
        return Delivered(instruction)

    def erasure_pattern(self, size, rng: np.random.Generator) -> np.ndarray:
        """Boolean erasure flags for ``size`` independent transmissions."""
        return rng.random(size) < self.epsilon


def transmit(channel: ErasureChannel, instruction: int, rng: np.random.Generator) -> Delivery:
    return channel.transmit(instruction, rng)
