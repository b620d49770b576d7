"""Pydantic schemas for experiment setups and aggregated results."""
from enum import Enum
from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.bandit.agent import FallbackKind
from src.bandit.environment import BanditInstance, DistKind
from src.policies.repeat_wrapper import repetition_parameter
from src.scheduling.repetitions import MultiAgentConfig
from src.utils.helpers import power_of_two_checkpoints
from src.utils.validators import validate_means, validate_probability


class PolicyKind(str, Enum):
    UCB = "ucb"
    SAE = "sae"
    UCB_REPEAT = "ucb+repeat"
    SAE_REPEAT = "sae+repeat"
    LSAE = "lsae"
    MULTI_AGENT = "multiagent"


class ExperimentSetup(BaseModel):
    """Everything needed to reproduce one Monte Carlo cell."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    means: Tuple[float, ...]
    dist_kind: DistKind = DistKind.BERNOULLI
    epsilon: Optional[float] = None
    epsilons: Optional[Tuple[float, ...]] = None
    policy: PolicyKind
    fallback: FallbackKind = FallbackKind.LAST_RECEIVED
    fixed_arm: Optional[int] = None
    horizon: int = Field(ge=0)
    reps: int = Field(default=100, ge=1)
    seed: int = Field(ge=0)
    checkpoints: Optional[Tuple[int, ...]] = None
    c_prime: float = Field(default=1.0, gt=0.0)
    output_dir: Optional[str] = None

    @field_validator("means")
    @classmethod
    def _check_means(cls, v):
        return tuple(validate_means(v))

    @field_validator("epsilon")
    @classmethod
    def _check_epsilon(cls, v):
        return None if v is None else validate_probability(v, "epsilon")

    @field_validator("epsilons")
    @classmethod
    def _check_epsilons(cls, v):
        if v is None:
            return None
        if not v:
            raise ValueError("epsilons needs at least one agent")
        return tuple(validate_probability(e, "epsilons") for e in v)

    @model_validator(mode="after")
    def _check_combination(self):
        if self.policy is PolicyKind.MULTI_AGENT:
            if self.epsilons is None:
                raise ValueError("policy multiagent needs a list of per-agent epsilons")
            if self.epsilon is not None:
                raise ValueError("policy multiagent takes epsilons, not epsilon")
            if self.fallback is not FallbackKind.LAST_RECEIVED:
                raise ValueError("policy multiagent requires the last_received fallback")
        else:
            if self.epsilon is None:
                raise ValueError(f"policy {self.policy.value} needs a single epsilon")
            if self.epsilons is not None:
                raise ValueError(f"policy {self.policy.value} takes epsilon, not epsilons")

        if self.fallback is FallbackKind.FIXED_ARM:
            if self.fixed_arm is None or not 1 <= self.fixed_arm <= len(self.means):
                raise ValueError(f"fixed fallback needs fixed_arm in [1..{len(self.means)}]")
        elif self.fixed_arm is not None:
            raise ValueError("fixed_arm is only valid with the fixed fallback")

        if self.checkpoints is not None:
            points = list(self.checkpoints)
            if points != sorted(set(points)) or (points and (points[0] < 1 or points[-1] > self.horizon)):
                raise ValueError(f"checkpoints must be strictly increasing within [1..{self.horizon}]")
        return self

    @property
    def instance(self) -> BanditInstance:
        return BanditInstance(self.means, self.dist_kind)

    @property
    def n_arms(self) -> int:
        return len(self.means)

    @property
    def alpha(self) -> int:
        """Single-agent repetition count for this horizon and channel."""
        return repetition_parameter(max(self.horizon, 1), self.epsilon or 0.0)

    @property
    def multi_agent(self) -> Optional[MultiAgentConfig]:
        if self.epsilons is None:
            return None
        return MultiAgentConfig(self.epsilons, self.n_arms, self.horizon)

    @property
    def alphas(self) -> Optional[Tuple[int, ...]]:
        config = self.multi_agent
        return None if config is None else config.alphas

    def resolved_checkpoints(self) -> List[int]:
        if self.checkpoints is not None:
            return list(self.checkpoints)
        return power_of_two_checkpoints(self.horizon)


class RegretStats(BaseModel):
    """Cumulative regret across replications at each checkpoint."""

    model_config = ConfigDict(frozen=True)

    checkpoints: Tuple[int, ...]
    mean: Tuple[float, ...]
    std: Tuple[float, ...]
    ci95: Tuple[float, ...]
    reps: int
    seed: int
    config_hash: str
    generator: str = "PCG64"

    @property
    def final_mean(self) -> float:
        return self.mean[-1] if self.mean else 0.0

    @property
    def final_ci(self) -> float:
        return self.ci95[-1] if self.ci95 else 0.0
