"""Test cases for the learner-side policies."""
import math
import sys
from pathlib import Path

import pytest

# Add project root to path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.bandit.agent import AgentState
from src.bandit.channel import ErasureChannel
from src.bandit.environment import BanditInstance, DistKind
from src.bandit.simulator import simulate
from src.policies.base_policy import Policy
from src.policies.bounds import (
    elimination_batch_bound, full_erasure_run_bound, lower_bound_shape, lsae_bad_event_bound,
    lsae_regret_shape, repeat_regret_bound
)
from src.policies.elimination import (
    LingeringSAE, SuccessiveElimination, lsae_batch_size, lsae_eliminate, lsae_threshold,
    sae_threshold, second_half_mean
)
from src.policies.repeat_wrapper import RepeatWrapper, repetition_parameter
from src.policies.ucb import UCB
from src.utils.helpers import make_generator
from src.utils.validators import (
    BatchOverflowError, ConfigurationError, PolicyStateError, RewardDomainError
)


class ScriptedPolicy(Policy):
    """Cycles through a fixed arm script and records every observation."""

    name = "scripted"

    def __init__(self, n_arms, horizon, script):
        super().__init__(n_arms, horizon)
        self.script = script
        self.selected_at = []
        self.observed = []

    def _select(self, t):
        self.selected_at.append(t)
        return self.script[(t - 1) % len(self.script)]

    def _observe(self, arm, reward):
        self.observed.append((arm, reward))


def _drive(policy, rewards):
    """Select/observe loop with a reward per round; returns the sent arms."""
    sent = []
    for t, reward in enumerate(rewards, start=1):
        arm = policy.select(t)
        policy.observe(arm, reward)
        sent.append(arm)
    return sent


# --- repetition_parameter ---

@pytest.mark.parametrize("horizon,epsilon,expected", [
    (100, 0.0, 1),
    (100, 0.1, 4),
    (10 ** 6, 0.5, 40),
    (1000, 0.5, 20),
    (1, 0.9, 1),
])
def test_repetition_parameter(horizon, epsilon, expected):
    """alpha = max(1, ceil(2 log T / log(1/eps)))."""
    assert repetition_parameter(horizon, epsilon) == expected


def test_repetition_parameter_rejects_certain_erasure():
    """epsilon = 1 is not a channel."""
    with pytest.raises(ConfigurationError):
        repetition_parameter(100, 1.0)


# --- UCB ---

def test_ucb_initialization_order():
    """Untried arms go first, lowest index first."""
    policy = UCB(3, 10)
    assert _drive(policy, [0.5, 0.5, 0.5]) == [1, 2, 3]


def test_ucb_index_example():
    """counts (5,5), sums (4,1), t = 10 picks arm 1 with index ~1.7597."""
    policy = UCB(2, 100)
    policy.counts[:] = [5, 5]
    policy.sums[:] = [4.0, 1.0]
    indices = policy.indices(10)
    assert indices[0] == pytest.approx(0.8 + math.sqrt(2 * math.log(10) / 5))
    assert indices[0] == pytest.approx(1.7597, abs=1e-4)
    assert policy.select(10) == 1


def test_ucb_tie_breaks_to_lowest_arm():
    """Identical statistics on all arms select arm 1."""
    policy = UCB(4, 100)
    policy.counts[:] = 3
    policy.sums[:] = 1.5
    assert policy.select(20) == 1


def test_ucb_counts_track_observations():
    """Counts sum to the number of observations; means stay in [0, 1]."""
    policy = UCB(3, 50)
    rng = make_generator(4)
    _drive(policy, rng.random(50))
    assert policy.counts.sum() == 50
    assert ((policy.means >= 0) & (policy.means <= 1)).all()


def test_policy_rejects_bad_reward():
    """Rewards outside [0, 1] raise a domain error."""
    policy = UCB(2, 10)
    with pytest.raises(RewardDomainError):
        policy.observe(1, 1.5)


def test_policy_stops_at_horizon():
    """A policy never selects after H observations."""
    policy = UCB(2, 3)
    _drive(policy, [1.0, 0.0, 1.0])
    with pytest.raises(PolicyStateError):
        policy.select(4)


# --- RepeatWrapper ---

def test_repeat_identity_at_alpha_one():
    """alpha = 1 sends exactly what the inner policy selects and forwards every reward."""
    script = [2, 1, 3, 3, 1]
    wrapper = RepeatWrapper.wrap(lambda k, h: ScriptedPolicy(k, h, script), 3, 5, 1)
    assert _drive(wrapper, [0.1, 0.2, 0.3, 0.4, 0.5]) == script
    assert wrapper.inner.observed == list(zip(script, [0.1, 0.2, 0.3, 0.4, 0.5]))


def test_repeat_runs_and_forwarding():
    """T = 10, alpha = 3: inner queried at 1,4,7,10; rewards at 3,6,9 forwarded, t = 10 discarded."""
    wrapper = RepeatWrapper.wrap(lambda k, h: ScriptedPolicy(k, h, [1, 5, 2, 4]), 5, 10, 3)
    rewards = [t / 10 for t in range(1, 11)]
    sent = _drive(wrapper, rewards)
    assert wrapper.run_pos == 1

    assert wrapper.inner.horizon == 4
    assert wrapper.inner.selected_at == [1, 2, 3, 4]
    assert wrapper.inner_queries == 4
    assert sent == [1, 1, 1, 5, 5, 5, 2, 2, 2, 4]
    assert wrapper.inner.observed == [(1, 0.3), (5, 0.6), (2, 0.9)]
    assert wrapper.forwarded == 3


@pytest.mark.parametrize("horizon,alpha", [(1, 1), (7, 2), (12, 3), (12, 5), (30, 7)])
def test_repeat_inner_horizon(horizon, alpha):
    """Inner select calls equal ceil(T/alpha) exactly."""
    wrapper = RepeatWrapper.wrap(lambda k, h: ScriptedPolicy(k, h, [1, 2]), 2, horizon, alpha)
    _drive(wrapper, [0.5] * horizon)
    assert wrapper.inner_queries == math.ceil(horizon / alpha)


def test_repeat_rejects_mismatched_inner_horizon():
    """The inner policy must run on ceil(T/alpha) rounds."""
    with pytest.raises(ConfigurationError):
        RepeatWrapper(UCB(2, 10), 3, 10)


def test_run_protection_over_all_patterns(noiseless_instance):
    """Whenever every run has a delivery, each forwarded reward comes from the run's arm."""
    horizon, alpha = 12, 3
    means = noiseless_instance.means
    checked = 0
    for bits in range(2 ** horizon):
        pattern = [bool(bits >> t & 1) for t in range(horizon)]
        runs = [pattern[s:s + alpha] for s in range(0, horizon, alpha)]
        if any(all(run) for run in runs):
            continue
        wrapper = RepeatWrapper.wrap(lambda k, h: ScriptedPolicy(k, h, [1, 4, 2, 3]), 4, horizon, alpha)
        simulate(wrapper, noiseless_instance, ErasureChannel(0.0), AgentState(), horizon,
                 make_generator(bits), erasure_pattern=pattern)
        assert len(wrapper.inner.observed) == horizon // alpha
        for arm, reward in wrapper.inner.observed:
            assert reward == means[arm - 1]
        checked += 1
    assert checked == 7 ** 4


def test_full_erasure_runs_are_rare():
    """Frequency of any fully erased run stays below 1/T + 3 sigma (T = 1000, eps = 0.5, alpha = 20)."""
    horizon, epsilon, episodes = 1000, 0.5, 10_000
    alpha = repetition_parameter(horizon, epsilon)
    assert alpha == 20

    channel = ErasureChannel(epsilon)
    erased = channel.erasure_pattern((episodes, horizon), make_generator(99))
    runs = erased.reshape(episodes, horizon // alpha, alpha)
    frequency = runs.all(axis=2).any(axis=1).mean()

    p = 1.0 / horizon
    assert frequency <= p + 3 * math.sqrt(p * (1 - p) / episodes)
    assert full_erasure_run_bound(horizon, alpha, epsilon) <= p


# --- L-SAE building blocks ---

def test_lsae_batch_size():
    """M_i = alpha 4^i, so M_1 = 4 alpha and batches grow by 4."""
    assert lsae_batch_size(10, 1) == 40
    assert lsae_batch_size(10, 2) == 160
    for alpha in (1, 3, 27):
        assert lsae_batch_size(alpha, 2) == 4 * lsae_batch_size(alpha, 1)
    with pytest.raises(BatchOverflowError):
        lsae_batch_size(2, 40)


def test_second_half_mean():
    """Only the last half of the buffer counts."""
    assert second_half_mean([0, 0, 0, 0, 1, 1, 0, 1]) == 0.75
    assert second_half_mean([0.4] * 6) == pytest.approx(0.4)
    assert second_half_mean([1, 1, 1, 1, 0, 0, 0, 0]) == 0.0
    with pytest.raises(PolicyStateError):
        second_half_mean([1, 0, 1], size=4)


def test_lsae_threshold():
    """4 sqrt(log(KT)/M), halving when M quadruples."""
    assert lsae_threshold(10, 1000, 40) == pytest.approx(1.9196, abs=1e-3)
    assert lsae_threshold(10, 1000, 160) == pytest.approx(lsae_threshold(10, 1000, 40) / 2)
    values = [lsae_threshold(5, 100, m) for m in (4, 16, 64, 256)]
    assert values == sorted(values, reverse=True)


def test_sae_threshold_halves_per_batch():
    """2 sqrt(log(KT)/(2n)) halves when n quadruples."""
    assert sae_threshold(4, 500, 64) == pytest.approx(sae_threshold(4, 500, 16) / 2)


def test_lsae_eliminate():
    """Keep arms whose deficit is at most the threshold."""
    assert lsae_eliminate([1, 2, 3], {1: 0.9, 2: 0.5, 3: 0.85}, 0.3) == [1, 3]
    assert lsae_eliminate([1, 2, 3], {1: 0.0, 2: 1.0, 3: 0.5}, 1.0) == [1, 2, 3]
    assert lsae_eliminate([4], {4: 0.1}, 0.0) == [4]
    # deficit exactly equal to the threshold survives
    assert lsae_eliminate([1, 2], {1: 0.75, 2: 0.5}, 0.25) == [1, 2]
    with pytest.raises(PolicyStateError):
        lsae_eliminate([], {}, 0.5)


# --- L-SAE policy ---

def test_lsae_emission_prefix():
    """A = {1,2}, alpha = 1: arm 1 four times, then arm 2 four times."""
    policy = LingeringSAE(2, 100, alpha=1)
    assert _drive(policy, [0.5] * 8) == [1, 1, 1, 1, 2, 2, 2, 2]
    assert policy.batch == 2
    assert len(policy.history) == 1
    assert policy.history[0].batch_size == 4


def test_lsae_batches_are_complete():
    """Every closed batch recorded exactly M_i pulls per active arm."""
    instance = BanditInstance((0.8, 0.5, 0.2))
    policy = LingeringSAE(3, 3000, alpha=2)
    simulate(policy, instance, ErasureChannel(0.3), AgentState(), 3000, make_generator(8))
    for summary in policy.history:
        assert summary.batch_size == lsae_batch_size(2, summary.batch)
        assert set(summary.survivors) <= set(summary.means)
    sizes = [len(s.survivors) for s in policy.history]
    assert sizes == sorted(sizes, reverse=True)


def test_lsae_rejects_reward_for_wrong_arm():
    """Rewards must belong to the arm of the current block."""
    policy = LingeringSAE(2, 50, alpha=1)
    policy.select(1)
    with pytest.raises(PolicyStateError):
        policy.observe(2, 1.0)


def test_lsae_truncated_batch_is_not_evaluated():
    """A batch cut by the horizon performs no elimination."""
    policy = LingeringSAE(2, 12, alpha=1)
    _drive(policy, [1.0] * 4 + [0.0] * 8)
    assert len(policy.history) == 1
    assert policy.active == [1, 2]


def test_elimination_batch_bound_on_noiseless_instance():
    """An arm with gap D leaves no later than the first batch with threshold < D/2."""
    instance = BanditInstance((1.0, 0.5, 0.0), DistKind.DETERMINISTIC)
    horizon = 20_000
    policy = LingeringSAE(3, horizon, alpha=1)
    simulate(policy, instance, ErasureChannel(0.0), AgentState(), horizon, make_generator(0))

    eliminated_at = {}
    for summary in policy.history:
        for arm in set(summary.means) - set(summary.survivors):
            eliminated_at[arm] = summary.batch
    for arm, gap in ((2, 0.5), (3, 1.0)):
        assert eliminated_at[arm] <= elimination_batch_bound(3, horizon, 1, gap)
    assert policy.active == [1]


def test_lsae_singleton_exploits():
    """After the last elimination the sole survivor is sent every round."""
    instance = BanditInstance((1.0, 0.0), DistKind.DETERMINISTIC)
    trace = simulate(LingeringSAE(2, 2000, alpha=1), instance, ErasureChannel(0.0), AgentState(),
                     2000, make_generator(0))
    assert (trace.sent[-500:] == 1).all()


def test_plain_sae_uses_full_buffer():
    """SAE batch i pulls each arm 4^i times and averages all of them."""
    policy = SuccessiveElimination(2, 100)
    assert policy.batch_size(1) == 4
    _drive(policy, [1.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0])
    assert policy.history[0].means == {1: 0.5, 2: 0.0}


def test_lsae_for_channel():
    """The channel constructor uses the repetition parameter."""
    assert LingeringSAE.for_channel(4, 1000, 0.5).alpha == 20


# --- reference shapes ---

def test_reference_shapes():
    """Closed-form budgets used for reporting."""
    assert repeat_regret_bound(3, 10.0) == 64.0
    assert lower_bound_shape(16, 0.5) == pytest.approx(32.0)
    assert lower_bound_shape(16, 0.9) > lower_bound_shape(16, 0.5)
    with pytest.raises(ConfigurationError):
        elimination_batch_bound(2, 100, 1, 0.0)


def test_lsae_reference_shapes():
    """The erasure term is additive: it does not scale the per-gap terms."""
    log_t = math.log(1000)
    assert lsae_regret_shape(4, 1000, 0.0, [0.0, 0.5, 0.25]) == pytest.approx(4 * log_t + 2 * log_t + 4 * log_t)
    noisy = lsae_regret_shape(4, 1000, 0.75, [0.0, 0.5, 0.25])
    assert noisy - lsae_regret_shape(4, 1000, 0.0, [0.0, 0.5, 0.25]) == pytest.approx(12 * log_t)
    assert lsae_bad_event_bound(4, 1000, 20, 0.5) == pytest.approx(4 * log_t * 0.5 ** 20)


@pytest.mark.slow
def test_lsae_keeps_best_arm_full_scale():
    """K = 5, T = 10^4, eps = 0.5: the best arm is eliminated in at most 3 of 10^3 episodes."""
    instance = BanditInstance((0.9, 0.7, 0.5, 0.3, 0.1))
    losses = 0
    for seed in range(1000):
        policy = LingeringSAE.for_channel(5, 10_000, 0.5)
        simulate(policy, instance, ErasureChannel(0.5), AgentState(), 10_000, make_generator(seed))
        losses += 1 not in policy.active
    assert losses <= 3


def test_lsae_keeps_best_arm():
    """Quick scale of the best-arm survival check."""
    instance = BanditInstance((0.9, 0.7, 0.5, 0.3, 0.1))
    for seed in range(20):
        policy = LingeringSAE.for_channel(5, 3000, 0.5)
        simulate(policy, instance, ErasureChannel(0.5), AgentState(), 3000, make_generator(seed))
        assert 1 in policy.active
