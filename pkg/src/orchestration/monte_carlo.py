"""Monte Carlo aggregation and parameter sweeps."""
import itertools
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Dict, List, Mapping, Optional, Sequence

import numpy as np
from scipy.stats import norm

from config.logging_config import logger
from config.settings import settings
from src.bandit.environment import DistKind, regret_curve
from src.bandit.instances import lower_bound_instance
from src.interface.config_parser import setup_fingerprint
from src.models.schemas import ExperimentSetup, RegretStats
from src.observability.telemetry import span
from src.orchestration.episode_runner import run_episode
from src.utils.helpers import fingerprint, spawn_generators
from src.utils.validators import ConfigurationError


def replicate(setup: ExperimentSetup, replication: int) -> np.ndarray:
    """Cumulative regret of replication ``r`` (seed base + r) at the checkpoints."""
    result = run_episode(setup, setup.seed + replication)
    points = setup.resolved_checkpoints()
    if not points:
        return np.zeros(0)
    curve = regret_curve(result.trace, setup.instance)
    return curve[np.asarray(points) - 1]


def aggregate(setup: ExperimentSetup, curves: Sequence[np.ndarray]) -> RegretStats:
    """Mean, sample std and normal-approximation CI half-width per checkpoint."""
    stacked = np.vstack(curves) if curves and len(curves[0]) else np.zeros((len(curves), 0))
    reps = stacked.shape[0]
    mean = stacked.mean(axis=0) if reps else np.zeros(0)

    if reps >= 2:
        std = stacked.std(axis=0, ddof=1)
    else:
        logger.warning("Fewer than two replications: std and CI reported as 0")
        std = np.zeros_like(mean)
    z = norm.ppf(0.5 + settings.ci_level / 2.0)
    ci = z * std / np.sqrt(max(reps, 1))

    return RegretStats(
        checkpoints=tuple(setup.resolved_checkpoints()),
        mean=tuple(float(x) for x in mean),
        std=tuple(float(x) for x in std),
        ci95=tuple(float(x) for x in ci),
        reps=reps,
        seed=setup.seed,
        config_hash=setup_fingerprint(setup),
        generator=settings.generator_name,
    )


class MonteCarloRunner:
    """Runs replications, in worker processes when more than one is allowed.

    Aggregation is always in replication order, whatever the completion order.
    """

    def __init__(self, max_workers: Optional[int] = None):
        self.max_workers = max_workers

    @property
    def workers(self) -> int:
        return self.max_workers or settings.threads

    def _curves(self, setups: Sequence[ExperimentSetup], order: Sequence[int]) -> Dict[int, np.ndarray]:
        # setups[r] drives replication r
        if self.workers <= 1 or len(order) <= 1:
            return {r: replicate(setups[r], r) for r in order}
        with ProcessPoolExecutor(max_workers=self.workers) as executor:
            results = executor.map(replicate, [setups[r] for r in order], order)
            return dict(zip(order, results))

    def run(self, setup: ExperimentSetup, order: Optional[Sequence[int]] = None) -> RegretStats:
        """Aggregate ``setup.reps`` replications with seeds ``seed + r``."""
        order = list(range(setup.reps)) if order is None else list(order)
        if sorted(order) != list(range(setup.reps)):
            raise ConfigurationError("replication order must be a permutation of range(reps)", "order")

        with span("monte_carlo", policy=setup.policy.value, reps=setup.reps, horizon=setup.horizon):
            logger.info(f"Monte Carlo: policy={setup.policy.value} T={setup.horizon} "
                        f"reps={setup.reps} workers={self.workers}")
            curves = self._curves([setup] * setup.reps, order)
            return aggregate(setup, [curves[r] for r in range(setup.reps)])

    def run_indicator_family(self, template: ExperimentSetup) -> RegretStats:
        """Replications over the indicator family, the paying arm redrawn for each one.

        ``template`` supplies K, epsilon, policy, horizon, reps and seed; its means are ignored.
        """
        setups = indicator_family(template)
        with span("indicator_family", policy=template.policy.value, reps=template.reps,
                  horizon=template.horizon):
            logger.info(f"Indicator family: policy={template.policy.value} K={template.n_arms} "
                        f"eps={template.epsilon} T={template.horizon} reps={template.reps}")
            curves = self._curves(setups, list(range(template.reps)))
            stats = aggregate(template, [curves[r] for r in range(template.reps)])
        return stats.model_copy(update={"config_hash": fingerprint(f"{stats.config_hash}:indicator-family")})

    def sweep(self, setups: Sequence[ExperimentSetup]) -> List[RegretStats]:
        """Evaluate every cell independently, in grid order."""
        if not setups:
            raise ConfigurationError("sweep grid is empty", "sweep")
        with span("sweep", cells=len(setups)):
            results = []
            for idx, setup in enumerate(setups, start=1):
                logger.info(f"Sweep cell {idx}/{len(setups)}")
                results.append(self.run(setup))
            return results


monte_carlo_runner = MonteCarloRunner()


def monte_carlo(setup: ExperimentSetup) -> RegretStats:
    return monte_carlo_runner.run(setup)


def sweep(setups: Sequence[ExperimentSetup]) -> List[RegretStats]:
    return monte_carlo_runner.sweep(setups)


def expand_grid(base: ExperimentSetup, axes: Mapping[str, Sequence[Any]]) -> List[ExperimentSetup]:
    """Cartesian product of ``axes`` over ``base``, first axis varying slowest."""
    names = list(axes)
    cells = []
    for values in itertools.product(*(axes[name] for name in names)):
        fields = base.model_dump()
        fields.update(dict(zip(names, values)))
        cells.append(ExperimentSetup.model_validate(fields))
    return cells


def indicator_family(template: ExperimentSetup) -> List[ExperimentSetup]:
    """One setup per replication, each paying 1 on an arm drawn uniformly from [1..K].

    The draws come from a stream spawned from ``template.seed``, so they do not
    depend on the replication order or the worker count.
    """
    family_rng = spawn_generators(template.seed, 1)[0]
    bests = family_rng.integers(1, template.n_arms + 1, size=template.reps)
    return [
        template.model_copy(update={
            "means": lower_bound_instance(template.n_arms, int(best)).means,
            "dist_kind": DistKind.DETERMINISTIC,
        })
        for best in bests
    ]


def indicator_family_sweep(templates: Sequence[ExperimentSetup]) -> List[RegretStats]:
    if not templates:
        raise ConfigurationError("sweep grid is empty", "sweep")
    return [monte_carlo_runner.run_indicator_family(template) for template in templates]
