"""Seeded execution of a single episode."""
import time
from dataclasses import dataclass
from typing import Iterator, List, Optional, Union

import numpy as np

from config.logging_config import logger
from src.bandit.agent import AgentState
from src.bandit.channel import ErasureChannel
from src.bandit.environment import compute_regret
from src.bandit.simulator import simulate
from src.bandit.trace import EpisodeTrace, MultiAgentTrace
from src.models.schemas import ExperimentSetup, PolicyKind
from src.observability.metrics import record_episode
from src.policies.base_policy import Policy
from src.policies.elimination import LingeringSAE, SuccessiveElimination
from src.policies.repeat_wrapper import RepeatWrapper
from src.policies.ucb import UCB
from src.scheduling.multi_agent import ma_run
from src.utils.helpers import make_generator
from src.utils.validators import ConfigurationError


@dataclass
class EpisodeResult:
    trace: Union[EpisodeTrace, MultiAgentTrace]
    regret: float
    policy: Optional[Policy] = None
    active: Optional[List[int]] = None

    def __iter__(self) -> Iterator:
        # unpacks as (trace, regret)
        yield self.trace
        yield self.regret


def build_policy(setup: ExperimentSetup) -> Policy:
    """Instantiate the single-agent policy named by the setup."""
    n_arms = setup.n_arms
    horizon = max(setup.horizon, 1)
    kind = setup.policy

    if kind is PolicyKind.UCB:
        return UCB(n_arms, horizon)
    if kind is PolicyKind.SAE:
        return SuccessiveElimination(n_arms, horizon)
    if kind is PolicyKind.UCB_REPEAT:
        return RepeatWrapper.wrap(UCB, n_arms, horizon, setup.alpha)
    if kind is PolicyKind.SAE_REPEAT:
        return RepeatWrapper.wrap(SuccessiveElimination, n_arms, horizon, setup.alpha)
    if kind is PolicyKind.LSAE:
        return LingeringSAE(n_arms, horizon, setup.alpha)
    raise ConfigurationError(f"policy {kind.value} is not a single-agent policy", "policy")


def run_episode(setup: ExperimentSetup, seed: int) -> EpisodeResult:
    """Execute one episode; identical (setup, seed) give identical traces."""
    start_time = time.time()
    rng = make_generator(seed)
    instance = setup.instance

    if setup.policy is PolicyKind.MULTI_AGENT:
        outcome = ma_run(setup.multi_agent, instance, rng)
        result = EpisodeResult(outcome.trace, outcome.regret, active=outcome.active)
    else:
        policy = build_policy(setup)
        agent = AgentState(setup.fallback, setup.fixed_arm)
        channel = ErasureChannel(setup.epsilon)
        trace = simulate(policy, instance, channel, agent, setup.horizon, rng)
        active = list(policy.active) if hasattr(policy, "active") else None
        result = EpisodeResult(trace, compute_regret(trace, instance), policy=policy, active=active)

    execution_time = (time.time() - start_time) * 1000
    record_episode(setup.policy.value, int(np.size(result.trace.played)),
                   int(np.count_nonzero(result.trace.erased)), execution_time)
    logger.debug(f"Episode seed={seed} policy={setup.policy.value} regret={result.regret:.3f} "
                 f"in {execution_time:.2f}ms")
    return result
