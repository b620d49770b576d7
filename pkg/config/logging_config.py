"""Logging configuration."""
import logging
import sys
from pathlib import Path
from typing import Optional

from config.settings import settings


def setup_logging(log_level: str = "INFO", log_file: Optional[str] = None):
    """Configure application logging.

    Records go to stderr so that CLI output on stdout stays machine-readable.
    """
    handlers = [logging.StreamHandler(sys.stderr)]

    if log_file:
        log_path = Path(log_file)
        log_path.parent.mkdir(parents=True, exist_ok=True)
        handlers.append(logging.FileHandler(log_path))

    logging.basicConfig(
        level=getattr(logging, log_level.upper()),
        format='%(asctime)s - %(name)s - %(levelname)s - [%(filename)s:%(lineno)d] - %(message)s',
        handlers=handlers
    )

    # Set levels for specific loggers
    logging.getLogger("matplotlib").setLevel(logging.WARNING)
    logging.getLogger("opentelemetry").setLevel(logging.WARNING)

    return logging.getLogger("erasure_bandits")


logger = setup_logging(settings.log_level, settings.log_file)
