"""Single-agent round loop: select, transmit, play, reward, observe."""
from typing import Optional, Sequence

import numpy as np

from src.bandit.agent import AgentState, agent_step
from src.bandit.channel import ERASED, Delivered, ErasureChannel
from src.bandit.environment import BanditInstance, sample_reward
from src.bandit.trace import EpisodeTrace


def simulate(policy, instance: BanditInstance, channel: ErasureChannel, agent: AgentState,
             horizon: int, rng: np.random.Generator,
             erasure_pattern: Optional[Sequence[bool]] = None) -> EpisodeTrace:
    """Run ``horizon`` rounds of ``policy`` against the environment.

    Per round the generator is consumed in a fixed order: channel draw,
    agent fallback draw (only when needed), reward draw. An injected
    ``erasure_pattern`` replaces the channel draws.
    """
    if erasure_pattern is not None and len(erasure_pattern) < horizon:
        raise ValueError("erasure pattern shorter than the horizon")

    trace = EpisodeTrace.allocate(instance.n_arms, horizon)
    n_arms = instance.n_arms

    for t in range(1, horizon + 1):
        sent = policy.select(t)
        if erasure_pattern is None:
            delivery = channel.transmit(sent, rng)
        else:
            delivery = ERASED if erasure_pattern[t - 1] else Delivered(sent)
        played = agent_step(agent, delivery, rng, n_arms)
        reward = sample_reward(instance, played, rng)
        policy.observe(sent, reward)
        trace.record(t, sent, delivery is ERASED, played, reward)

    return trace
