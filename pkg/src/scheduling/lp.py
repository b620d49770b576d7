"""Relaxed end-time LP for one multi-agent batch, and a brute-force ILP oracle."""
import itertools
from typing import Iterator, Sequence, Tuple

from src.utils.validators import ConfigurationError


def lp_end_time(i: int, n_actions: int, alphas: Sequence[int]) -> Tuple[float, float]:
    """Closed-form optimum of the relaxed LP.

    At the optimum every agent finishes at the same time t*, which gives
    t* = 4^i K / sum_m 1/(alpha_m/4^i + 1) and tau = t* / (4^i K).
    """
    if not alphas:
        raise ConfigurationError("at least one agent is required", "alphas")
    if n_actions < 1:
        raise ConfigurationError(f"need at least one action, got {n_actions}", "K")
    if any(a < 0 for a in alphas):
        raise ConfigurationError("repetition counts must be non-negative", "alphas")

    pulls = 4 ** i
    capacity = sum(1.0 / (a / pulls + 1.0) for a in alphas)
    tau = 1.0 / capacity
    return pulls * n_actions * tau, tau


def _compositions(total: int, parts: int) -> Iterator[Tuple[int, ...]]:
    """All ways to write ``total`` as an ordered sum of ``parts`` non-negative ints."""
    for cuts in itertools.combinations(range(total + parts - 1), parts - 1):
        bounds = (-1,) + cuts + (total + parts - 1,)
        yield tuple(bounds[j + 1] - bounds[j] - 1 for j in range(parts))


def ilp_end_time_bruteforce(n_actions: int, alphas: Sequence[int], i: int) -> int:
    """Exact optimum of the integral program by exhaustive enumeration.

    Only meant for tiny instances (a few agents, actions and pulls).
    """
    pulls = 4 ** i
    n_agents = len(alphas)
    if n_agents == 0:
        raise ConfigurationError("at least one agent is required", "alphas")

    splits = list(_compositions(pulls, n_agents))
    best = None
    for assignment in itertools.product(splits, repeat=n_actions):
        end = max(
            sum(alphas[m] * (x[m] > 0) + x[m] for x in assignment)
            for m in range(n_agents)
        )
        if best is None or end < best:
            best = end
    return best
