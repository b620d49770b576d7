"""Basic metrics helpers (prometheus-compatible when installed)."""
try:
	from prometheus_client import Counter, Summary
	HAS_PROM = True
except Exception:
	HAS_PROM = False

from config.logging_config import logger


if HAS_PROM:
	EPISODES = Counter('bandit_episodes_total', 'Total simulated episodes', ['policy'])
	ROUNDS = Counter('bandit_rounds_total', 'Total simulated agent rounds', ['policy'])
	ERASURES = Counter('bandit_erasures_total', 'Total erased instructions', ['policy'])
	EPISODE_LATENCY_MS = Summary('bandit_episode_latency_ms', 'Episode wall time (ms)', ['policy'])
	SCHEDULED_BATCHES = Counter('bandit_scheduled_batches_total', 'Multi-agent batch schedules built')
else:
	EPISODES = None
	ROUNDS = None
	ERASURES = None
	EPISODE_LATENCY_MS = None
	SCHEDULED_BATCHES = None


def record_episode(policy: str, rounds: int, erasures: int, latency_ms: float):
	"""Record an episode if prometheus is available, otherwise log."""
	if HAS_PROM:
		try:
			EPISODES.labels(policy=policy).inc()
			ROUNDS.labels(policy=policy).inc(rounds)
			ERASURES.labels(policy=policy).inc(erasures)
			EPISODE_LATENCY_MS.labels(policy=policy).observe(latency_ms)
		except Exception as e:
			logger.debug(f"Prometheus metric record failed: {e}")
	else:
		logger.debug(f"Metric: {policy} rounds={rounds} erasures={erasures} latency_ms={latency_ms:.2f}")


def record_schedule(n_agents: int, n_actions: int):
	"""Count one built batch schedule."""
	if HAS_PROM:
		try:
			SCHEDULED_BATCHES.inc()
		except Exception as e:
			logger.debug(f"Prometheus metric record failed: {e}")
	else:
		logger.debug(f"Metric: schedule M={n_agents} K={n_actions}")
