"""CSV serialization of regret statistics, schedules and sweep indexes."""
from pathlib import Path
from typing import Sequence, Union

import pandas as pd

from config.logging_config import logger
from src.models.schemas import ExperimentSetup, RegretStats
from src.scheduling.batch_scheduler import BatchSchedule
from src.utils.helpers import format_significant
from src.utils.validators import ResultsWriteError

RESULTS_COLUMNS = ["t", "mean_regret", "std", "ci95", "reps", "seed", "config_hash"]
SCHEDULE_COLUMNS = ["agent", "slot_start", "slot_len", "action", "effective_pulls", "phase"]

PathLike = Union[str, Path]


def _write_frame(frame: pd.DataFrame, path: PathLike) -> Path:
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        frame.to_csv(path, index=False, lineterminator="\n")
    except OSError as exc:
        raise ResultsWriteError(f"cannot write {path}: {exc.strerror or exc}", str(path)) from exc
    logger.info(f"Wrote {len(frame)} rows to {path}")
    return path


def results_frame(stats: RegretStats) -> pd.DataFrame:
    """Rows of preformatted strings, one per checkpoint."""
    rows = [
        [str(t), format_significant(m), format_significant(s), format_significant(c),
         str(stats.reps), str(stats.seed), stats.config_hash]
        for t, m, s, c in zip(stats.checkpoints, stats.mean, stats.std, stats.ci95)
    ]
    return pd.DataFrame(rows, columns=RESULTS_COLUMNS, dtype=str)


def write_results_csv(stats: RegretStats, path: PathLike) -> Path:
    """Write ``t,mean_regret,std,ci95,reps,seed,config_hash``; identical stats give identical bytes."""
    return _write_frame(results_frame(stats), path)


def write_schedule_csv(schedule: BatchSchedule, path: PathLike) -> Path:
    """One row per segment; agents are 1-based, slots 0-based within the batch."""
    rows = [
        [m + 1, seg.slot_start, seg.length, seg.action, seg.pulls, seg.phase]
        for m, timeline in enumerate(schedule.segments)
        for seg in timeline
    ]
    return _write_frame(pd.DataFrame(rows, columns=SCHEDULE_COLUMNS), path)


def write_sweep_index(setups: Sequence[ExperimentSetup], stats: Sequence[RegretStats],
                      files: Sequence[PathLike], path: PathLike) -> Path:
    """One row per grid cell, in grid order."""
    frame = pd.DataFrame({
        "cell": range(1, len(setups) + 1),
        "policy": [s.policy.value for s in setups],
        "epsilon": [
            format_significant(s.epsilon) if s.epsilon is not None
            else " ".join(format_significant(e) for e in s.epsilons)
            for s in setups
        ],
        "T": [s.horizon for s in setups],
        "final_mean_regret": [format_significant(st.final_mean) for st in stats],
        "final_ci95": [format_significant(st.final_ci) for st in stats],
        "config_hash": [st.config_hash for st in stats],
        "file": [Path(f).name for f in files],
    })
    return _write_frame(frame, path)


def read_results_csv(path: PathLike) -> pd.DataFrame:
    """Load a results file back with numeric columns parsed."""
    try:
        return pd.read_csv(path, dtype={"config_hash": str})
    except OSError as exc:
        raise ResultsWriteError(f"cannot read {path}: {exc}", str(path)) from exc
