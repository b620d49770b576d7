"""Desk-scale checks of the headline properties, with a summary table on stdout."""
import argparse
import math
import sys
from pathlib import Path

import numpy as np
import pandas as pd

# Add project root to path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from config.logging_config import logger
from src.bandit.agent import AgentState, agent_step
from src.bandit.channel import ERASED, Delivered
from src.bandit.instances import gap_instance, lower_bound_instance
from src.models.schemas import ExperimentSetup, PolicyKind
from src.orchestration.monte_carlo import monte_carlo_runner
from src.scheduling.batch_scheduler import MAX_PHASE_B_PARTS, schedule_batch
from src.scheduling.delta_star import solve_delta_star
from src.scheduling.lp import lp_end_time
from src.scheduling.repetitions import MultiAgentConfig
from src.utils.helpers import make_generator


def check_replay() -> bool:
    """Sent [1,3,2,4,2] with rounds 3 and 4 erased plays [1,3,3,3,2]."""
    state = AgentState()
    rng = make_generator(0)
    sent = [1, 3, 2, 4, 2]
    erased = [False, False, True, True, False]
    played = [agent_step(state, ERASED if e else Delivered(a), rng, 4) for a, e in zip(sent, erased)]
    return played == [1, 3, 3, 3, 2]


def check_scheduler(configs: int, seed: int) -> bool:
    """Exact totals, bounded split parts and the end-time bound on random configs."""
    rng = make_generator(seed)
    violations = 0
    for _ in range(configs):
        m = int(rng.integers(1, 9))
        k = int(rng.integers(1, 17))
        i = int(rng.integers(0, 4))
        config = MultiAgentConfig(tuple(float(e) for e in rng.uniform(0.0, 0.9, size=m)), k, 10_000)
        schedule = schedule_batch(list(range(1, k + 1)), config.alphas, i, rng)
        totals_ok = all(p == 4 ** i for p in schedule.pull_totals().values())
        parts_ok = all(schedule.phase_b_parts(a) <= MAX_PHASE_B_PARTS for a in range(m))
        if not (totals_ok and parts_ok and schedule.end_time <= schedule.end_time_bound() + 1e-6):
            violations += 1
    logger.info(f"Scheduler: {violations} violations over {configs} configs")
    return violations == 0


def check_lp(configs: int, seed: int) -> bool:
    """Load equalization residual on random repetition vectors."""
    rng = make_generator(seed)
    worst = 0.0
    for _ in range(configs):
        alphas = [int(a) for a in rng.integers(0, 300, size=int(rng.integers(1, 9)))]
        i, k = int(rng.integers(0, 4)), int(rng.integers(1, 17))
        t_star, _ = lp_end_time(i, k, alphas)
        residual = abs(sum(t_star / (a / 4 ** i + 1.0) for a in alphas) - 4 ** i * k) / (4 ** i * k)
        worst = max(worst, residual)
    logger.info(f"LP: worst relative residual {worst:.3g}")
    return worst <= 1e-9


def check_delta_star(cases: int, seed: int) -> bool:
    """Bisection against the closed form for alpha = 0."""
    rng = make_generator(seed)
    worst = 0.0
    for _ in range(cases):
        k, m = int(rng.integers(2, 11)), int(rng.integers(1, 9))
        t, c = int(rng.integers(10_000, 1_000_000)), float(rng.uniform(0.1, 2.0))
        exact = math.sqrt(c * k * math.log(m * t) * math.log(k * m * t) / (t * m))
        worst = max(worst, abs(solve_delta_star(k, m, t, [0] * m, c) / exact - 1.0))
    logger.info(f"Delta*: worst relative error {worst:.3g}")
    return worst <= 1e-6


def check_lower_bound(reps: int, horizon: int) -> bool:
    """Regret on the indicator family grows with epsilon for both repetition-based policies.

    The paying arm is redrawn for every replication.
    """
    instance = lower_bound_instance(16, 1)
    ok = True
    for policy in (PolicyKind.LSAE, PolicyKind.UCB_REPEAT):
        finals = []
        for eps in (0.5, 0.9, 0.99):
            setup = ExperimentSetup(means=instance.means, dist_kind=instance.dist_kind, epsilon=eps,
                                    policy=policy, horizon=horizon, reps=reps, seed=0)
            finals.append(monte_carlo_runner.run_indicator_family(setup).final_mean)
        logger.info(f"Lower bound {policy.value}: {[round(f, 1) for f in finals]}")
        ok = ok and finals[0] > 0 and all(a < b for a, b in zip(finals, finals[1:]))
    return ok


def check_additive_cost(reps: int, horizon: int) -> bool:
    """Regret inflation from eps = 0 to 0.75: L-SAE below UCB+Repeat."""
    instance = gap_instance(10, 0.2)
    ratios = {}
    for policy in (PolicyKind.LSAE, PolicyKind.UCB_REPEAT):
        finals = [
            monte_carlo_runner.run(ExperimentSetup(means=instance.means, epsilon=eps, policy=policy,
                                                   horizon=horizon, reps=reps, seed=0)).final_mean
            for eps in (0.0, 0.75)
        ]
        ratios[policy] = finals[1] / finals[0]
    logger.info("Regret inflation: " + ", ".join(f"{p.value}={r:.2f}" for p, r in ratios.items()))
    return ratios[PolicyKind.LSAE] < ratios[PolicyKind.UCB_REPEAT]


def main():
    parser = argparse.ArgumentParser(description="Check the headline properties at desk scale")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--reps", type=int, default=20, help="replications for the Monte Carlo checks")
    parser.add_argument("--full", action="store_true", help="also run the T = 1e5 regret comparison")
    args = parser.parse_args()

    checks = [
        ("replay", check_replay),
        ("scheduler", lambda: check_scheduler(1000, args.seed)),
        ("lp", lambda: check_lp(1000, args.seed)),
        ("delta_star", lambda: check_delta_star(100, args.seed)),
        ("lower_bound", lambda: check_lower_bound(args.reps, 300_000)),
    ]
    if args.full:
        checks.append(("additive_cost", lambda: check_additive_cost(args.reps, 100_000)))

    rows = []
    for name, check in checks:
        try:
            passed = check()
        except Exception as e:
            logger.error(f"Check {name} failed with {type(e).__name__}: {e}")
            passed = False
        rows.append({"check": name, "passed": passed})

    summary = pd.DataFrame(rows)
    print(summary.to_string(index=False))
    return 0 if bool(np.all(summary["passed"])) else 1


if __name__ == "__main__":
    sys.exit(main())
