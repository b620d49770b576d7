"""Two-phase batch scheduler spreading 4^i effective pulls per action over M agents.

Phase A packs whole actions (alpha_m protection slots + 4^i pulls) onto
agents while their load stays within the LP budget 4^i K tau. Phase B
splits the leftover actions into near-equal parts and deals them to the
lowest-alpha half of the agents, at most three parts each.
"""
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, List, Sequence

import numpy as np

from config.logging_config import logger
from src.observability.metrics import record_schedule
from src.scheduling.lp import lp_end_time
from src.scheduling.repetitions import agent_order
from src.utils.validators import SchedulingInvariantError

MAX_PHASE_B_PARTS = 3

# Relative slack on the phase-A budget against float noise in t*.
BUDGET_RTOL = 1e-9


@dataclass(frozen=True)
class Segment:
    """``repetitions`` protection slots followed by ``pulls`` effective pulls of ``action``."""

    action: int
    pulls: int
    repetitions: int
    slot_start: int
    phase: str

    @property
    def length(self) -> int:
        return self.repetitions + self.pulls

    @property
    def slot_end(self) -> int:
        return self.slot_start + self.length


@dataclass
class BatchSchedule:
    batch: int
    alphas: List[int]
    segments: List[List[Segment]]
    budget: float
    tau: float
    end_time: int = field(init=False)

    def __post_init__(self):
        self.end_time = max((self.load(m) for m in range(len(self.segments))), default=0)

    @property
    def n_agents(self) -> int:
        return len(self.segments)

    @property
    def pulls_per_action(self) -> int:
        return 4 ** self.batch

    def load(self, agent: int) -> int:
        timeline = self.segments[agent]
        return timeline[-1].slot_end if timeline else 0

    def pull_totals(self) -> Dict[int, int]:
        totals: Dict[int, int] = {}
        for timeline in self.segments:
            for seg in timeline:
                totals[seg.action] = totals.get(seg.action, 0) + seg.pulls
        return totals

    def slot_totals(self) -> Dict[int, int]:
        """Slots (protection included) spent on each action."""
        totals: Dict[int, int] = {}
        for timeline in self.segments:
            for seg in timeline:
                totals[seg.action] = totals.get(seg.action, 0) + seg.length
        return totals

    def phase_b_parts(self, agent: int) -> int:
        return sum(1 for seg in self.segments[agent] if seg.phase == "B")

    @property
    def sent_instructions(self) -> int:
        return sum(self.load(m) for m in range(self.n_agents))

    def end_time_bound(self) -> float:
        """4^i K tau + 6 sum(alpha)/M + 12 K 4^i / M."""
        n_actions = len(self.pull_totals())
        m = self.n_agents
        return self.budget + 6.0 * sum(self.alphas) / m + 12.0 * n_actions * self.pulls_per_action / m

    def instructions(self, agent: int, filler: int = 0) -> List[int]:
        """Slot-by-slot action sent to ``agent`` over [0, end_time).

        Slots outside every segment carry ``filler``; 0 sends nothing.
        """
        plan = [filler] * self.end_time
        for seg in self.segments[agent]:
            plan[seg.slot_start:seg.slot_end] = [seg.action] * seg.length
        return plan

    def effective_slots(self, agent: int) -> List[bool]:
        """True on the last ``pulls`` slots of every segment."""
        mask = [False] * self.end_time
        for seg in self.segments[agent]:
            mask[seg.slot_start + seg.repetitions:seg.slot_end] = [True] * seg.pulls
        return mask

    def check_invariants(self, active: Sequence[int]) -> None:
        totals = self.pull_totals()
        expected = self.pulls_per_action
        if set(totals) != set(active) or any(p != expected for p in totals.values()):
            raise SchedulingInvariantError(
                f"batch {self.batch}: effective pulls {totals} do not all equal {expected}", "segments"
            )
        for m in range(self.n_agents):
            if self.phase_b_parts(m) > MAX_PHASE_B_PARTS:
                raise SchedulingInvariantError(
                    f"agent {m + 1} holds {self.phase_b_parts(m)} split parts", "segments"
                )
            for seg in self.segments[m]:
                if seg.pulls < 1:
                    raise SchedulingInvariantError("empty segment", "segments")


def split_evenly(total: int, parts: int) -> List[int]:
    """Near-equal integer parts; the remainder goes one unit at a time to the earliest parts."""
    base, extra = divmod(total, parts)
    return [base + 1 if j < extra else base for j in range(parts)]


def schedule_batch(active: Sequence[int], alphas: Sequence[int], i: int,
                   rng: np.random.Generator) -> BatchSchedule:
    """Build the batch-i schedule for ``active`` actions.

    ``alphas`` are indexed by agent; agents are visited in ascending alpha
    order internally. Action order and the placement of split parts are
    randomized with ``rng`` so that every schedule shape is equally likely
    for every action.
    """
    if not active:
        raise SchedulingInvariantError("cannot schedule an empty active set", "active")

    alphas = [int(a) for a in alphas]
    n_agents = len(alphas)
    pulls = 4 ** i
    t_star, tau = lp_end_time(i, len(active), alphas)
    budget = t_star
    order = agent_order(alphas)

    shuffled = [active[j] for j in rng.permutation(len(active))]
    queue = deque(shuffled)
    loads = [0] * n_agents
    segments: List[List[Segment]] = [[] for _ in range(n_agents)]

    # Phase A: whole actions within the LP budget
    limit = budget * (1.0 + BUDGET_RTOL)
    for m in order:
        cost = alphas[m] + pulls
        while queue and loads[m] + cost <= limit:
            segments[m].append(Segment(queue.popleft(), pulls, alphas[m], loads[m], "A"))
            loads[m] += cost

    # Phase B: split the leftovers over the lowest-alpha half of the agents
    leftover = list(queue)
    if leftover:
        k_hat = len(leftover)
        helpers = order[:n_agents // 2]
        n_parts = max(1, min(n_agents // (2 * k_hat), pulls))
        parts = [(k, size) for k in leftover for size in split_evenly(pulls, n_parts)]
        if not helpers or len(parts) > MAX_PHASE_B_PARTS * len(helpers):
            raise SchedulingInvariantError(
                f"batch {i}: {len(parts)} split parts cannot fit on {len(helpers)} agents "
                f"(K_hat={k_hat}, M={n_agents})", "segments"
            )
        for idx, j in enumerate(rng.permutation(len(parts))):
            action, size = parts[j]
            m = helpers[idx % len(helpers)]
            segments[m].append(Segment(action, size, alphas[m], loads[m], "B"))
            loads[m] += alphas[m] + size

    schedule = BatchSchedule(batch=i, alphas=alphas, segments=segments, budget=budget, tau=tau)
    schedule.check_invariants(active)
    record_schedule(n_agents, len(active))
    logger.debug(
        f"Scheduled batch {i}: K={len(active)} M={n_agents} split={len(leftover)} "
        f"end_time={schedule.end_time} budget={budget:.2f}"
    )
    return schedule
