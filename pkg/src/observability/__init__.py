"""Metrics and tracing helpers."""
from src.observability.metrics import record_episode, record_schedule
from src.observability.telemetry import span, capture_exception

__all__ = ['record_episode', 'record_schedule', 'span', 'capture_exception']
