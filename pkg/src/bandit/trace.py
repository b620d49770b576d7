"""Per-round episode logs."""
from dataclasses import dataclass, field
from typing import Iterator, List, NamedTuple

import numpy as np
import pandas as pd


class RoundRecord(NamedTuple):
    t: int
    sent: int
    erased: bool
    played: int
    reward: float


@dataclass(eq=False)
class EpisodeTrace:
    """Column-oriented log of one single-agent episode (rounds are 1-based)."""

    n_arms: int
    sent: np.ndarray
    erased: np.ndarray
    played: np.ndarray
    rewards: np.ndarray

    @classmethod
    def allocate(cls, n_arms: int, horizon: int) -> "EpisodeTrace":
        return cls(
            n_arms=n_arms,
            sent=np.zeros(horizon, dtype=np.int64),
            erased=np.zeros(horizon, dtype=bool),
            played=np.zeros(horizon, dtype=np.int64),
            rewards=np.zeros(horizon, dtype=float),
        )

    @property
    def horizon(self) -> int:
        return len(self.played)

    def record(self, t: int, sent: int, erased: bool, played: int, reward: float) -> None:
        idx = t - 1
        self.sent[idx] = sent
        self.erased[idx] = erased
        self.played[idx] = played
        self.rewards[idx] = reward

    def records(self) -> Iterator[RoundRecord]:
        for idx in range(self.horizon):
            yield RoundRecord(
                idx + 1,
                int(self.sent[idx]),
                bool(self.erased[idx]),
                int(self.played[idx]),
                float(self.rewards[idx]),
            )

    def concat(self, other: "EpisodeTrace") -> "EpisodeTrace":
        if other.n_arms != self.n_arms:
            raise ValueError("cannot concatenate traces over different arm counts")
        return EpisodeTrace(
            n_arms=self.n_arms,
            sent=np.concatenate([self.sent, other.sent]),
            erased=np.concatenate([self.erased, other.erased]),
            played=np.concatenate([self.played, other.played]),
            rewards=np.concatenate([self.rewards, other.rewards]),
        )

    def identical(self, other: "EpisodeTrace") -> bool:
        """Bit-identical comparison of every column."""
        return (
            self.n_arms == other.n_arms
            and np.array_equal(self.sent, other.sent)
            and np.array_equal(self.erased, other.erased)
            and np.array_equal(self.played, other.played)
            and np.array_equal(self.rewards, other.rewards)
        )

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({
            "t": np.arange(1, self.horizon + 1),
            "sent": self.sent,
            "erased": self.erased,
            "played": self.played,
            "reward": self.rewards,
        })


@dataclass
class BatchRecord:
    """Book-keeping of one multi-agent elimination batch."""

    batch: int
    active_before: List[int]
    active_after: List[int]
    end_time: int
    slots_run: int
    sent_instructions: int
    threshold: float
    truncated: bool


@dataclass(eq=False)
class MultiAgentTrace:
    """Per-agent logs of a multi-agent episode; row m is agent m+1.

    ``sent`` holds 0 in slots where the learner sent the agent nothing.
    """

    n_arms: int
    sent: np.ndarray
    erased: np.ndarray
    played: np.ndarray
    rewards: np.ndarray
    batches: List[BatchRecord] = field(default_factory=list)

    @classmethod
    def allocate(cls, n_agents: int, n_arms: int, horizon: int) -> "MultiAgentTrace":
        shape = (n_agents, horizon)
        return cls(
            n_arms=n_arms,
            sent=np.zeros(shape, dtype=np.int64),
            erased=np.zeros(shape, dtype=bool),
            played=np.zeros(shape, dtype=np.int64),
            rewards=np.zeros(shape, dtype=float),
        )

    @property
    def n_agents(self) -> int:
        return self.played.shape[0]

    @property
    def horizon(self) -> int:
        return self.played.shape[1]

    def identical(self, other: "MultiAgentTrace") -> bool:
        return (
            self.n_arms == other.n_arms
            and np.array_equal(self.sent, other.sent)
            and np.array_equal(self.erased, other.erased)
            and np.array_equal(self.played, other.played)
            and np.array_equal(self.rewards, other.rewards)
        )
