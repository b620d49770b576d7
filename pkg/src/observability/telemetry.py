"""Telemetry helpers (OTel-compatible when available)."""
from contextlib import contextmanager

try:
    from opentelemetry import trace
    HAS_OTEL = True
except Exception:
    HAS_OTEL = False

from config.logging_config import logger


def init_tracer(service_name: str = "erasure_bandits"):
    if not HAS_OTEL:
        logger.debug("OpenTelemetry not installed; telemetry disabled.")
        return None
    tracer = trace.get_tracer(service_name)
    logger.debug("Telemetry tracer initialized")
    return tracer


tracer = init_tracer()


@contextmanager
def span(name: str, **attributes):
    """Trace a block; a no-op without OpenTelemetry."""
    if tracer is None:
        yield None
        return
    with tracer.start_as_current_span(name) as current:
        for key, value in attributes.items():
            current.set_attribute(key, value)
        yield current


def capture_exception(exc: Exception):
    """Attach ``exc`` to the active span, if any."""
    if HAS_OTEL:
        trace.get_current_span().record_exception(exc)
    logger.debug(f"Captured exception: {type(exc).__name__}: {exc}")
