"""Test cases for the multi-agent scheduler, elimination loop and gap solver."""
import math
import sys
from pathlib import Path

import numpy as np
import pytest

# Add project root to path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.bandit.environment import BanditInstance, DistKind
from src.scheduling.batch_scheduler import MAX_PHASE_B_PARTS, schedule_batch, split_evenly
from src.scheduling.delta_star import delta_star_objective, solve_delta_star
from src.scheduling.lp import ilp_end_time_bruteforce, lp_end_time
from src.scheduling.multi_agent import ma_run, ma_threshold
from src.scheduling.repetitions import MultiAgentConfig, agent_order, agent_repetitions
from src.utils.helpers import make_generator
from src.utils.validators import (
    ConfigurationError, DimensionError, NumericError, SchedulingInvariantError
)


def _closed_form_delta(k, m, t, c_prime):
    return math.sqrt(c_prime * k * math.log(m * t) * math.log(k * m * t) / (t * m))


# --- repetitions ---

@pytest.mark.parametrize("horizon,epsilon,expected", [
    (100, 0.0, 0),
    (100, 0.1, 7),
    (10 ** 6, 0.5, 79),
    (1, 0.5, 0),
])
def test_agent_repetitions(horizon, epsilon, expected):
    """alpha_m = max(0, ceil(4 log T / log(1/eps)) - 1)."""
    assert agent_repetitions(horizon, epsilon) == expected


def test_agent_repetitions_rejects_certain_erasure():
    """epsilon_m = 1 is rejected."""
    with pytest.raises(ConfigurationError):
        agent_repetitions(100, 1.0)


def test_multi_agent_config():
    """Alphas are derived per agent; agents sort ascending by alpha."""
    config = MultiAgentConfig((0.5, 0.0, 0.9), 3, 100)
    assert config.n_agents == 3
    assert config.alphas == (26, 0, 174)
    assert config.agent_order() == [1, 0, 2]
    with pytest.raises(ConfigurationError):
        MultiAgentConfig((), 3, 100)


def test_agent_order_is_stable_and_drives_phase_a():
    """Ties keep index order; Phase A fills the lowest-alpha agent first."""
    assert agent_order([5, 0, 5, 2]) == [1, 3, 0, 2]
    schedule = schedule_batch([1, 2], [3, 0], 0, make_generator(0))
    assert schedule.segments[0] == []
    assert [seg.phase for seg in schedule.segments[1]] == ["A", "B"]


# --- LP ---

def test_lp_without_repetitions_splits_evenly():
    """All alpha_m = 0 gives t* = 4^i K / M."""
    t_star, tau = lp_end_time(2, 5, [0, 0, 0, 0])
    assert t_star == pytest.approx(16 * 5 / 4)
    assert tau == pytest.approx(0.25)


def test_lp_single_agent_is_serial():
    """M = 1 gives t* = K (alpha + 4^i)."""
    t_star, _ = lp_end_time(1, 3, [5])
    assert t_star == pytest.approx(3 * (5 + 4))


def test_lp_worked_example():
    """M = 2, alpha = [4, 4], i = 1, K = 2 gives t* = 8, tau = 1."""
    t_star, tau = lp_end_time(1, 2, [4, 4])
    assert t_star == pytest.approx(8.0)
    assert tau == pytest.approx(1.0)


def test_lp_rejects_no_agents():
    """M = 0 is a configuration error."""
    with pytest.raises(ConfigurationError):
        lp_end_time(1, 2, [])


def test_lp_load_equalization():
    """sum_m t*/(alpha_m/4^i + 1) equals 4^i K to 1e-9 relative on random alphas."""
    rng = np.random.default_rng(1)
    for _ in range(1000):
        m = int(rng.integers(1, 9))
        k = int(rng.integers(1, 17))
        i = int(rng.integers(1, 4))
        alphas = [int(a) for a in rng.integers(0, 300, size=m)]
        t_star, _ = lp_end_time(i, k, alphas)
        pulls = 4 ** i
        residual = sum(t_star / (a / pulls + 1.0) for a in alphas) - pulls * k
        assert abs(residual) <= 1e-9 * pulls * k


def test_lp_lower_bounds_integral_optimum():
    """Brute-force ILP optimum is never below t* (M, K <= 3, 4^i <= 4)."""
    rng = np.random.default_rng(2)
    for m in range(1, 4):
        for k in range(1, 4):
            for i in (0, 1):
                for _ in range(3):
                    alphas = [int(a) for a in rng.integers(0, 6, size=m)]
                    t_star, _ = lp_end_time(i, k, alphas)
                    assert ilp_end_time_bruteforce(k, alphas, i) >= t_star - 1e-9


def test_ilp_worked_example():
    """Two agents with alpha 4 each take one whole action: end time 8."""
    assert ilp_end_time_bruteforce(2, [4, 4], 1) == 8


# --- schedule_batch ---

def test_split_evenly():
    """The remainder goes to the earliest parts."""
    assert split_evenly(10, 3) == [4, 3, 3]
    assert split_evenly(4, 4) == [1, 1, 1, 1]


def test_schedule_worked_example():
    """M = 2, K = 3, i = 0, alpha = [1, 1]: end time 4 within the bound 27."""
    schedule = schedule_batch([1, 2, 3], [1, 1], 0, make_generator(0))
    assert schedule.budget == pytest.approx(3.0)
    assert schedule.pull_totals() == {1: 1, 2: 1, 3: 1}
    assert schedule.end_time == 4
    assert schedule.end_time_bound() == pytest.approx(27.0)
    assert schedule.phase_b_parts(0) == 1
    assert schedule.phase_b_parts(1) == 0
    assert [seg.phase for seg in schedule.segments[0]] == ["A", "B"]


def test_schedule_single_agent_is_serial():
    """M = 1 schedules every action whole, back to back."""
    schedule = schedule_batch([1, 2, 3], [5], 1, make_generator(3))
    assert schedule.end_time == 3 * (5 + 4)
    assert all(seg.phase == "A" for seg in schedule.segments[0])
    assert sorted(seg.action for seg in schedule.segments[0]) == [1, 2, 3]


def test_schedule_timelines():
    """Instructions and effective-slot masks line up with the segments."""
    schedule = schedule_batch([1, 2, 3, 4], [0, 3, 6], 1, make_generator(5))
    for m in range(schedule.n_agents):
        plan = schedule.instructions(m)
        mask = schedule.effective_slots(m)
        assert len(plan) == len(mask) == schedule.end_time
        assert sum(mask) == sum(seg.pulls for seg in schedule.segments[m])
        assert all(plan[s] != 0 for s in range(schedule.end_time) if mask[s])
        assert plan[schedule.load(m):] == [0] * (schedule.end_time - schedule.load(m))
        assert schedule.instructions(m, filler=2)[schedule.load(m):] == [2] * (schedule.end_time - schedule.load(m))


def test_schedule_rejects_empty_active_set():
    """Nothing to schedule is an invariant failure."""
    with pytest.raises(SchedulingInvariantError):
        schedule_batch([], [0, 1], 1, make_generator(0))


def test_scheduler_soundness_on_random_configs():
    """Exact 4^i totals, <= 3 split parts per agent and the end-time bound on 1000 configs."""
    rng = np.random.default_rng(7)
    for _ in range(1000):
        m = int(rng.integers(1, 9))
        k = int(rng.integers(1, 17))
        i = int(rng.integers(0, 4))
        config = MultiAgentConfig(tuple(float(e) for e in rng.uniform(0.0, 0.9, size=m)), k, 10_000)
        schedule = schedule_batch(list(range(1, k + 1)), config.alphas, i, rng)

        assert schedule.pull_totals() == {a: 4 ** i for a in range(1, k + 1)}
        assert all(schedule.phase_b_parts(a) <= MAX_PHASE_B_PARTS for a in range(m))
        bound = k * 4 ** i * schedule.tau + 6 * sum(config.alphas) / m + 12 * k * 4 ** i / m
        assert schedule.end_time <= bound + 1e-6


def _slot_totals(n, seed):
    rng = make_generator(seed)
    alphas = [0, 2, 5]
    return np.array([
        [schedule_batch([1, 2, 3, 4], alphas, 1, rng).slot_totals()[a] for a in (1, 2, 3, 4)]
        for _ in range(n)
    ], dtype=float)


def _assert_symmetric(totals, sigmas):
    n = totals.shape[0]
    grand = totals.mean()
    for col in range(totals.shape[1]):
        spread = totals[:, col].std(ddof=1) / math.sqrt(n)
        assert abs(totals[:, col].mean() - grand) <= sigmas * spread + 1e-12


def test_schedule_is_symmetric_across_actions():
    """Shuffled schedules give every action the same expected slot count."""
    _assert_symmetric(_slot_totals(2000, 11), 4)


@pytest.mark.slow
def test_schedule_symmetry_over_ten_thousand_schedules():
    """10^4 shuffled schedules: per-action mean slot counts agree within 3 sigma."""
    _assert_symmetric(_slot_totals(10_000, 11), 3)


# --- ma_threshold ---

def test_ma_threshold():
    """2 sqrt(log(KMT)/(2 4^j)), halving per batch."""
    assert ma_threshold(2, 2, 100, 1) == pytest.approx(1.7309, abs=1e-3)
    assert ma_threshold(2, 2, 100, 2) == pytest.approx(ma_threshold(2, 2, 100, 1) / 2)
    assert ma_threshold(3, 4, 1000, 30) < 1e-6


# --- ma_run ---

def test_single_agent_perfect_channel_plays_what_is_sent():
    """M = 1, eps = 0: played equals sent in every slot."""
    config = MultiAgentConfig((0.0,), 3, 500)
    result = ma_run(config, BanditInstance((0.9, 0.5, 0.1)), 4)
    trace = result.trace
    assert trace.horizon == 500
    assert not trace.erased.any()
    assert np.array_equal(trace.played, trace.sent)


def test_noiseless_elimination_timing():
    """A gap-1 arm leaves at the first batch whose threshold drops below 1."""
    config = MultiAgentConfig((0.0, 0.0), 2, 10_000)
    result = ma_run(config, BanditInstance((1.0, 0.0), DistKind.DETERMINISTIC), 0)
    batches = result.trace.batches

    assert ma_threshold(2, 2, 10_000, 2) > 1.0 > ma_threshold(2, 2, 10_000, 3)
    assert batches[1].active_after == [1, 2]
    assert batches[2].active_after == [1]
    assert result.active == [1]
    # 4 + 16 + 64 pulls of the bad arm, then idle agents follow the leader
    assert result.regret == pytest.approx(84.0)
    start = sum(b.slots_run for b in batches[:3])
    assert (result.trace.sent[:, start:] == 1).all()


def test_sent_instructions_within_budget():
    """Per-batch sends stay within M t* + 6 sum(alpha) + 12 K 4^i."""
    config = MultiAgentConfig((0.1, 0.5, 0.8), 4, 5000)
    result = ma_run(config, BanditInstance((0.8, 0.6, 0.4, 0.2)), 21)
    alphas = list(config.alphas)
    for record in result.trace.batches:
        if record.truncated:
            continue
        k = len(record.active_before)
        t_star, _ = lp_end_time(record.batch, k, alphas)
        bound = config.n_agents * t_star + 6 * sum(alphas) + 12 * k * 4 ** record.batch
        assert record.sent_instructions <= bound
    sizes = [len(b.active_after) for b in result.trace.batches]
    assert sizes == sorted(sizes, reverse=True)


def test_ma_run_is_deterministic():
    """Same seed, same trace."""
    config = MultiAgentConfig((0.2, 0.6), 3, 800)
    instance = BanditInstance((0.7, 0.5, 0.3))
    assert ma_run(config, instance, 9).trace.identical(ma_run(config, instance, 9).trace)
    assert ma_run(config, instance, make_generator(9)).trace.identical(
        ma_run(config, instance, make_generator(9)).trace
    )


def test_ma_run_accepts_numpy_integer_seeds():
    """A numpy integer seed behaves like the same Python int."""
    config = MultiAgentConfig((0.2, 0.6), 3, 400)
    instance = BanditInstance((0.7, 0.5, 0.3))
    assert ma_run(config, instance, np.int64(3)).trace.identical(ma_run(config, instance, 3).trace)


def test_ma_run_dimension_mismatch():
    """Config and instance must agree on K."""
    with pytest.raises(DimensionError):
        ma_run(MultiAgentConfig((0.1,), 3, 10), BanditInstance((0.5, 0.5)), 0)


# --- delta_star ---

def test_delta_star_example():
    """c' = 1, K = 4, M = 1, T = 10^4, alpha = [0] gives ~0.1976."""
    assert solve_delta_star(4, 1, 10_000, [0]) == pytest.approx(0.1976, abs=1e-4)


def test_delta_star_matches_closed_form():
    """Bisection matches the alpha = 0 closed form to 1e-6 relative."""
    rng = np.random.default_rng(3)
    for _ in range(100):
        k = int(rng.integers(2, 11))
        m = int(rng.integers(1, 9))
        t = int(rng.integers(10_000, 1_000_000))
        c_prime = float(rng.uniform(0.1, 2.0))
        value = solve_delta_star(k, m, t, [0] * m, c_prime)
        assert value == pytest.approx(_closed_form_delta(k, m, t, c_prime), rel=1e-6)


def test_delta_star_decreases_with_horizon():
    """Doubling T strictly decreases the root."""
    alphas = [3, 10, 40]
    assert solve_delta_star(5, 3, 20_000, alphas) < solve_delta_star(5, 3, 10_000, alphas)


def test_delta_star_residual():
    """|f(root)| <= 1e-6 c' K log(MT)."""
    k, m, t, alphas, c_prime = 6, 3, 50_000, [2, 9, 31], 1.5
    root = solve_delta_star(k, m, t, alphas, c_prime)
    residual = delta_star_objective(root, k, m, t, alphas, c_prime)
    assert abs(residual) <= 1e-6 * c_prime * k * math.log(m * t)


def test_delta_star_clamped_to_one():
    """Roots beyond the largest possible gap clamp to 1."""
    assert _closed_form_delta(10, 1, 2, 1.0) > 1.0
    assert solve_delta_star(10, 1, 2, [0]) == 1.0


def test_delta_star_bracket_failure():
    """No sign change inside [1e-12, 1e6] is a numeric error."""
    with pytest.raises(NumericError):
        solve_delta_star(2, 1, 10, [10 ** 12])


def test_delta_star_rejects_bad_constant():
    """c' must be positive."""
    with pytest.raises(ConfigurationError):
        solve_delta_star(2, 1, 100, [0], c_prime=0.0)
