"""Shared fixtures and marker registration."""
import sys
from pathlib import Path

import pytest

# Add project root to path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.bandit.environment import BanditInstance, DistKind


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: desk-scale acceptance runs (minutes)")


@pytest.fixture
def table_instance():
    """Four Bernoulli arms, best arm 3."""
    return BanditInstance((0.1, 0.2, 0.9, 0.4))


@pytest.fixture
def noiseless_instance():
    """Deterministic instance with distinct means."""
    return BanditInstance((0.1, 0.2, 0.3, 0.4), DistKind.DETERMINISTIC)
