"""Reference regret shapes (constants set to 1) for reporting and scaling checks."""
import math
from typing import Iterable

from src.policies.elimination import lsae_threshold
from src.utils.validators import ConfigurationError, validate_probability


def repeat_regret_bound(alpha: int, inner_bound: float) -> float:
    """Wrapped regret budget: 2 alpha R_inner(ceil(T/alpha)) + alpha + 1."""
    return 2.0 * alpha * inner_bound + alpha + 1.0


def full_erasure_run_bound(horizon: int, alpha: int, epsilon: float) -> float:
    """Union bound on some run of alpha sends being fully erased."""
    epsilon = validate_probability(epsilon)
    return math.ceil(horizon / alpha) * epsilon ** alpha


def lsae_bad_event_bound(n_arms: int, horizon: int, alpha: int, epsilon: float) -> float:
    """Union bound on some kept half-block being fully erased: K log(T) eps^alpha."""
    epsilon = validate_probability(epsilon)
    return n_arms * math.log(horizon) * epsilon ** alpha


def lsae_regret_shape(n_arms: int, horizon: int, epsilon: float, gaps: Iterable[float]) -> float:
    """K log T / (1 - eps) + sum over positive gaps of log T / gap."""
    epsilon = validate_probability(epsilon)
    log_t = math.log(horizon)
    return n_arms * log_t / (1.0 - epsilon) + sum(log_t / g for g in gaps if g > 0)


def lower_bound_shape(n_arms: int, epsilon: float) -> float:
    """K / (1 - eps): growth every policy suffers on the indicator family."""
    epsilon = validate_probability(epsilon)
    return n_arms / (1.0 - epsilon)


def elimination_batch_bound(n_arms: int, horizon: int, alpha: int, gap: float) -> int:
    """First batch i with 4 sqrt(log(KT) / (alpha 4^i)) < gap / 2."""
    if gap <= 0:
        raise ConfigurationError(f"gap must be positive, got {gap}", "gap")
    i = 1
    while lsae_threshold(n_arms, horizon, alpha * 4 ** i) >= gap / 2.0:
        i += 1
    return i
