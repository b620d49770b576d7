"""Instance families: the noiseless indicator family and single-gap instances."""
from src.bandit.environment import BanditInstance, DistKind
from src.utils.validators import ArmIndexError, ConfigurationError


def lower_bound_instance(n_arms: int, best: int) -> BanditInstance:
    """Noiseless indicator instance: arm ``best`` pays 1, every other arm pays 0."""
    if n_arms < 1:
        raise ConfigurationError(f"need at least one arm, got {n_arms}", "K")
    if not 1 <= best <= n_arms:
        raise ArmIndexError(f"best arm {best} outside [1..{n_arms}]", "best")
    means = tuple(1.0 if j == best else 0.0 for j in range(1, n_arms + 1))
    return BanditInstance(means, DistKind.DETERMINISTIC)


def gap_instance(n_arms: int, gap: float, top: float = 0.5, best: int = 1,
                 dist_kind: DistKind = DistKind.BERNOULLI) -> BanditInstance:
    """One arm at ``top``, all others ``gap`` below it."""
    if not 1 <= best <= n_arms:
        raise ArmIndexError(f"best arm {best} outside [1..{n_arms}]", "best")
    if gap < 0 or top - gap < 0:
        raise ConfigurationError(f"top={top} and gap={gap} give a negative mean", "gap")
    means = tuple(top if j == best else top - gap for j in range(1, n_arms + 1))
    return BanditInstance(means, dist_kind)
