"""Data models package."""
from src.models.schemas import PolicyKind, ExperimentSetup, RegretStats

__all__ = ['PolicyKind', 'ExperimentSetup', 'RegretStats']
