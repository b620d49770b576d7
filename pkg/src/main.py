"""Command-line entry point: run, sweep, schedule, lower-bound, delta-star."""
import argparse
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from pydantic import ValidationError

# Add parent directory to path so imports work
sys.path.insert(0, str(Path(__file__).parent.parent))

from config.settings import settings
from config.logging_config import logger
from src.bandit.instances import lower_bound_instance
from src.interface.config_parser import apply_overrides, parse_config, parse_sweep, split_list
from src.interface.results_writer import write_results_csv, write_schedule_csv, write_sweep_index
from src.models.schemas import ExperimentSetup, PolicyKind
from src.observability.telemetry import capture_exception
from src.orchestration.monte_carlo import expand_grid, indicator_family_sweep, monte_carlo_runner
from src.policies.bounds import lower_bound_shape
from src.scheduling.batch_scheduler import schedule_batch
from src.scheduling.delta_star import solve_delta_star
from src.scheduling.repetitions import MultiAgentConfig
from src.utils.helpers import format_significant, make_generator
from src.utils.validators import ArmIndexError, ConfigurationError, ErasureBanditError

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_RUNTIME = 3

LOWER_BOUND_POLICIES = (PolicyKind.LSAE, PolicyKind.UCB_REPEAT)


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigurationError(f"cannot read config {path}: {exc.strerror or exc}", "config") from exc


def _output_dir(args: argparse.Namespace, setup: Optional[ExperimentSetup] = None) -> Path:
    if args.out:
        return Path(args.out)
    if setup is not None and setup.output_dir:
        return Path(setup.output_dir)
    return Path(settings.results_dir)


def _floats(text: str) -> List[float]:
    try:
        return [float(v) for v in split_list(text)]
    except ValueError:
        raise ConfigurationError(f"expected a comma-separated list of numbers, got {text!r}", "epsilons")


def cmd_run(args: argparse.Namespace) -> int:
    setup = apply_overrides(parse_config(_read_text(args.config)), reps=args.reps, seed=args.seed)
    stats = monte_carlo_runner.run(setup)
    path = write_results_csv(stats, _output_dir(args, setup) / f"regret_{stats.config_hash}.csv")
    print(path)
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace) -> int:
    base, axes = parse_sweep(_read_text(args.config))
    base = apply_overrides(base, reps=args.reps, seed=args.seed)
    cells = expand_grid(base, axes)
    out = _output_dir(args, base)

    results = monte_carlo_runner.sweep(cells)
    files = [
        write_results_csv(stats, out / f"cell{idx:03d}_{stats.config_hash}.csv")
        for idx, stats in enumerate(results, start=1)
    ]
    print(write_sweep_index(cells, results, files, out / "index.csv"))
    return EXIT_OK


def cmd_schedule(args: argparse.Namespace) -> int:
    config = MultiAgentConfig(tuple(_floats(args.epsilons)), args.arms, args.horizon)
    if args.batch < 0:
        raise ConfigurationError(f"batch index must be >= 0, got {args.batch}", "batch")
    active = list(range(1, config.n_arms + 1))
    schedule = schedule_batch(active, config.alphas, args.batch, make_generator(args.seed))

    name = f"schedule_M{config.n_agents}_K{config.n_arms}_i{args.batch}.csv"
    path = write_schedule_csv(schedule, _output_dir(args) / name)
    print(f"alphas={list(config.alphas)} end_time={schedule.end_time} "
          f"bound={format_significant(schedule.end_time_bound())} t_star={format_significant(schedule.budget)}")
    print(path)
    return EXIT_OK


def cmd_lower_bound(args: argparse.Namespace) -> int:
    # without --best the paying arm is redrawn for every replication
    try:
        instance = lower_bound_instance(args.arms, 1 if args.best is None else args.best)
    except ArmIndexError as exc:
        raise ConfigurationError(exc.message, "best") from exc
    epsilons = _floats(args.epsilons)
    reps = args.reps or 20
    seed = 0 if args.seed is None else args.seed

    cells = [
        ExperimentSetup(means=instance.means, dist_kind=instance.dist_kind, epsilon=eps,
                        policy=policy, horizon=args.horizon, reps=reps, seed=seed)
        for policy in LOWER_BOUND_POLICIES
        for eps in epsilons
    ]
    out = _output_dir(args) / "lower_bound"
    if args.best is None:
        results = indicator_family_sweep(cells)
    else:
        results = monte_carlo_runner.sweep(cells)
    files = []
    for setup, stats in zip(cells, results):
        files.append(write_results_csv(stats, out / f"{setup.policy.value}_eps{setup.epsilon}.csv"))
        print(f"{setup.policy.value:12s} eps={setup.epsilon:<6} "
              f"final regret {format_significant(stats.final_mean)} +/- {format_significant(stats.final_ci)} "
              f"(x{stats.final_mean / lower_bound_shape(args.arms, setup.epsilon):.2f} of K/(1-eps))")
    print(write_sweep_index(cells, results, files, out / "index.csv"))
    return EXIT_OK


def cmd_delta_star(args: argparse.Namespace) -> int:
    setup = parse_config(_read_text(args.config))
    if setup.policy is not PolicyKind.MULTI_AGENT:
        raise ConfigurationError("delta-star needs a multiagent config (channel.epsilons)", "policy.kind")
    config = setup.multi_agent
    value = solve_delta_star(config.n_arms, config.n_agents, config.horizon, config.alphas, setup.c_prime)
    print(format_significant(value))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="erasure-bandits",
        description="Simulate multi-armed bandits whose instructions cross an erasure channel",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, config: bool = True) -> None:
        if config:
            p.add_argument("--config", required=True, help="experiment document path")
        p.add_argument("--out", help="output directory (overrides [output] directory)")
        p.add_argument("--reps", type=int, help="override the replication count")
        p.add_argument("--seed", type=int, help="override the base seed")

    p = sub.add_parser("run", help="Monte Carlo regret for one config -> CSV")
    common(p)
    p.set_defaults(handler=cmd_run)

    p = sub.add_parser("sweep", help="grid document -> CSV per cell + index")
    common(p)
    p.set_defaults(handler=cmd_sweep)

    p = sub.add_parser("schedule", help="emit one multi-agent batch schedule as CSV")
    p.add_argument("--epsilons", required=True, help="per-agent erasure probabilities, comma-separated")
    p.add_argument("--arms", type=int, required=True, help="number of active actions K")
    p.add_argument("--batch", type=int, default=1, help="batch index i (4^i pulls per action)")
    p.add_argument("--horizon", type=int, default=10_000, help="horizon T used for the repetition counts")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="output directory")
    p.set_defaults(handler=cmd_schedule)

    p = sub.add_parser("lower-bound", help="indicator-family experiment for L-SAE and UCB+Repeat")
    common(p, config=False)
    p.add_argument("--arms", type=int, default=16)
    p.add_argument("--best", type=int, help="fix the arm paying 1 (default: drawn per replication)")
    p.add_argument("--epsilons", default="0.5,0.9,0.99")
    p.add_argument("--horizon", type=int, default=300_000)
    p.set_defaults(handler=cmd_lower_bound)

    p = sub.add_parser("delta-star", help="print the balancing gap for a multiagent config")
    p.add_argument("--config", required=True)
    p.set_defaults(handler=cmd_delta_star)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except ConfigurationError as e:
        logger.error(f"Configuration error: {e.message}")
        return EXIT_CONFIG
    except ValidationError as e:
        logger.error(f"Configuration error: {e.errors()[0]['msg']}")
        return EXIT_CONFIG
    except (ErasureBanditError, OSError, ArithmeticError) as e:
        logger.error(f"Error in {args.command}: {e}")
        capture_exception(e)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
