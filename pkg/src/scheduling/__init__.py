"""Multi-agent repetition counts, batch scheduling and elimination."""
from src.scheduling.repetitions import MultiAgentConfig, agent_order, agent_repetitions
from src.scheduling.lp import lp_end_time, ilp_end_time_bruteforce
from src.scheduling.batch_scheduler import BatchSchedule, Segment, schedule_batch, split_evenly
from src.scheduling.multi_agent import MultiAgentResult, ma_run, ma_threshold
from src.scheduling.delta_star import delta_star_objective, solve_delta_star

__all__ = [
    'MultiAgentConfig', 'agent_order', 'agent_repetitions',
    'lp_end_time', 'ilp_end_time_bruteforce',
    'BatchSchedule', 'Segment', 'schedule_batch', 'split_evenly',
    'MultiAgentResult', 'ma_run', 'ma_threshold',
    'delta_star_objective', 'solve_delta_star'
]
