"""Episode execution, Monte Carlo aggregation and sweeps."""
from src.bandit.instances import lower_bound_instance, gap_instance
from src.orchestration.episode_runner import EpisodeResult, build_policy, run_episode
from src.orchestration.monte_carlo import (
    MonteCarloRunner, monte_carlo_runner, monte_carlo, sweep, expand_grid, aggregate, replicate,
    indicator_family, indicator_family_sweep
)

__all__ = [
    'lower_bound_instance', 'gap_instance',
    'EpisodeResult', 'build_policy', 'run_episode',
    'MonteCarloRunner', 'monte_carlo_runner', 'monte_carlo', 'sweep', 'expand_grid',
    'aggregate', 'replicate', 'indicator_family', 'indicator_family_sweep'
]
