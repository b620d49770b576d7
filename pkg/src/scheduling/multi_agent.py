"""Batched arm elimination across M agents with heterogeneous erasure channels.

The batch loop is reconstructed from the analysis of the multi-agent
scheme: batch i collects 4^i effective pulls per active action through
``schedule_batch``, averages them, and drops every action whose deficit
to the empirical best exceeds ``ma_threshold``.
"""
import math
from dataclasses import dataclass
from typing import Dict, List, Union

import numpy as np

from config.logging_config import logger
from src.bandit.agent import AgentState, FallbackKind, agent_step
from src.bandit.channel import ERASED, ErasureChannel
from src.bandit.environment import BanditInstance, compute_regret, sample_reward
from src.bandit.trace import BatchRecord, MultiAgentTrace
from src.policies.elimination import lsae_eliminate
from src.scheduling.batch_scheduler import schedule_batch
from src.scheduling.repetitions import MultiAgentConfig
from src.utils.helpers import spawn_generators
from src.utils.validators import DimensionError, PolicyStateError


def ma_threshold(n_arms: int, n_agents: int, horizon: int, j: int) -> float:
    """2 * sqrt(log(K M T) / (2 * 4^j)), natural log."""
    return 2.0 * math.sqrt(math.log(n_arms * n_agents * horizon) / (2.0 * 4 ** j))


@dataclass
class MultiAgentResult:
    trace: MultiAgentTrace
    regret: float
    active: List[int]


def _agent_streams(rng: Union[int, np.random.Generator], count: int) -> List[np.random.Generator]:
    if isinstance(rng, (int, np.integer)):
        entropy = int(rng)
    else:
        entropy = int(rng.integers(0, 2 ** 63))
    return spawn_generators(entropy, count)


def ma_run(config: MultiAgentConfig, instance: BanditInstance,
           rng: Union[int, np.random.Generator]) -> MultiAgentResult:
    """Run the multi-agent elimination loop for ``config.horizon`` slots.

    Stream 0 derived from ``rng`` shuffles schedules; stream m drives agent
    m's channel, fallback and rewards. Slots where an agent has nothing
    scheduled carry the leader, the empirical best of the last closed batch
    (nothing is sent before the first close). Those slots, like any
    carryover into the next batch, are charged to regret but never to an
    effective-pull buffer.
    """
    if config.n_arms != instance.n_arms:
        raise DimensionError(
            f"config has K={config.n_arms} arms but instance has K={instance.n_arms}", "n_arms"
        )

    n_agents, n_arms, horizon = config.n_agents, config.n_arms, config.horizon
    alphas = list(config.alphas)
    streams = _agent_streams(rng, n_agents + 1)
    scheduler_rng, agent_rngs = streams[0], streams[1:]
    channels = [ErasureChannel(e) for e in config.epsilons]
    agents = [AgentState(FallbackKind.LAST_RECEIVED) for _ in range(n_agents)]
    trace = MultiAgentTrace.allocate(n_agents, n_arms, horizon)

    active = list(range(1, n_arms + 1))
    leader = 0
    batch = 1
    start = 0
    while start < horizon:
        schedule = schedule_batch(active, alphas, batch, scheduler_rng)
        slots = min(schedule.end_time, horizon - start)
        truncated = slots < schedule.end_time
        effective: Dict[int, List[float]] = {a: [] for a in active}

        for m in range(n_agents):
            plan = schedule.instructions(m, filler=leader)
            counted = schedule.effective_slots(m)
            agent, channel, agent_rng = agents[m], channels[m], agent_rngs[m]
            for s in range(slots):
                t = start + s
                instruction = plan[s]
                if instruction:
                    delivery = channel.transmit(instruction, agent_rng)
                else:
                    delivery = ERASED
                played = agent_step(agent, delivery, agent_rng, n_arms)
                reward = sample_reward(instance, played, agent_rng)
                trace.sent[m, t] = instruction
                trace.erased[m, t] = bool(instruction) and delivery is ERASED
                trace.played[m, t] = played
                trace.rewards[m, t] = reward
                if counted[s]:
                    effective[instruction].append(reward)

        threshold = ma_threshold(n_arms, n_agents, horizon, batch)
        before = list(active)
        if not truncated:
            if any(len(effective[a]) != 4 ** batch for a in active):
                raise PolicyStateError(f"batch {batch} closed with incomplete buffers", "effective")
            means = {a: float(np.mean(effective[a])) for a in active}
            active = lsae_eliminate(active, means, threshold)
            leader = max(active, key=lambda a: (means[a], -a))

        trace.batches.append(BatchRecord(
            batch=batch,
            active_before=before,
            active_after=list(active),
            end_time=schedule.end_time,
            slots_run=slots,
            sent_instructions=int(np.count_nonzero(trace.sent[:, start:start + slots])),
            threshold=threshold,
            truncated=truncated,
        ))
        logger.debug(
            f"Multi-agent batch {batch}: {len(before)} -> {len(active)} active, "
            f"{slots}/{schedule.end_time} slots"
        )
        start += slots
        batch += 1

    return MultiAgentResult(trace=trace, regret=compute_regret(trace, instance), active=active)
