"""Application settings using pydantic BaseSettings."""
from typing import Optional

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    model_config = SettingsConfigDict(env_prefix="ERASURE_BANDITS_")

    # Harness parallelism (ERASURE_BANDITS_THREADS)
    threads: int = Field(default=1, ge=1)

    # Logging
    log_level: str = "INFO"
    log_file: Optional[str] = None

    # Experiment defaults
    default_reps: int = Field(default=100, ge=1)
    ci_level: float = Field(default=0.95, gt=0.0, lt=1.0)
    results_dir: str = "results"

    # Pinned random generator, recorded in output metadata
    generator_name: str = "PCG64"


settings = Settings()
