"""Bandit environment, erasure channel and agent state machine."""
from src.bandit.environment import BanditInstance, DistKind, sample_reward, compute_regret, regret_curve, shifted_mean
from src.bandit.instances import lower_bound_instance, gap_instance
from src.bandit.channel import ErasureChannel, Delivered, Erased, ERASED, transmit
from src.bandit.agent import AgentState, FallbackKind, agent_step
from src.bandit.trace import EpisodeTrace, MultiAgentTrace, BatchRecord
from src.bandit.simulator import simulate

__all__ = [
    'BanditInstance', 'DistKind', 'sample_reward', 'compute_regret', 'regret_curve', 'shifted_mean',
    'lower_bound_instance', 'gap_instance',
    'ErasureChannel', 'Delivered', 'Erased', 'ERASED', 'transmit',
    'AgentState', 'FallbackKind', 'agent_step',
    'EpisodeTrace', 'MultiAgentTrace', 'BatchRecord',
    'simulate'
]
