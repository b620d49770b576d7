"""Gap value balancing the two terms of the multi-agent gap-independent bound."""
import math
from functools import partial
from typing import Callable, Sequence, Tuple

from scipy.optimize import bisect

from config.logging_config import logger
from src.utils.validators import ConfigurationError, NumericError

BRACKET_LOWER = 1e-12
BRACKET_UPPER = 1e6
BRACKET_GROWTH = 10.0


def delta_star_objective(delta: float, n_arms: int, n_agents: int, horizon: int,
                         alphas: Sequence[int], c_prime: float) -> float:
    """f(D) = T D sum_m 1/(alpha_m + log(KMT)/D) - c' K log(MT); increasing in D."""
    log_kmt = math.log(n_arms * n_agents * horizon)
    load = sum(1.0 / (a + log_kmt / delta) for a in alphas)
    return horizon * delta * load - c_prime * n_arms * math.log(n_agents * horizon)


def find_monotonic_increasing_bounds(root_func: Callable[[float], float],
                                     initial_guess: float = 1.0) -> Tuple[float, float]:
    """Grow a bracket [lo, hi] with f(lo) < 0 < f(hi) inside [1e-12, 1e6]."""
    lo = hi = initial_guess

    while root_func(lo) >= 0:
        lo /= BRACKET_GROWTH
        if lo < BRACKET_LOWER:
            raise NumericError(f"no sign change above {BRACKET_LOWER}", "delta")

    while root_func(hi) <= 0:
        hi *= BRACKET_GROWTH
        if hi > BRACKET_UPPER:
            raise NumericError(f"no sign change below {BRACKET_UPPER}", "delta")

    return lo, hi


def solve_delta_star(n_arms: int, n_agents: int, horizon: int, alphas: Sequence[int],
                     c_prime: float = 1.0, rtol: float = 1e-9) -> float:
    """Root of ``delta_star_objective`` by bisection, clamped to gaps' range (0, 1]."""
    if c_prime <= 0:
        raise ConfigurationError(f"c_prime must be positive, got {c_prime}", "c_prime")
    if len(alphas) != n_agents:
        raise ConfigurationError(f"{len(alphas)} repetition counts for {n_agents} agents", "alphas")
    if n_arms < 1 or horizon < 1:
        raise ConfigurationError("need K >= 1 and T >= 1", "K")

    f = partial(delta_star_objective, n_arms=n_arms, n_agents=n_agents, horizon=horizon,
                alphas=alphas, c_prime=c_prime)
    lo, hi = find_monotonic_increasing_bounds(f)
    root = bisect(f, lo, hi, xtol=1e-300, rtol=rtol, maxiter=2000)

    if root > 1.0:
        logger.warning(f"Delta* = {root:.6g} exceeds the largest possible gap; clamped to 1")
        return 1.0
    return float(root)
