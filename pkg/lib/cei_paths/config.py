"""
Configuration management for the CEI path simulation toolkit
"""

from pathlib import Path

from pydantic_settings import BaseSettings, SettingsConfigDict


class SimulationSettings(BaseSettings):
    """Process-wide defaults, overridable through CEI_* environment variables"""

    model_config = SettingsConfigDict(env_prefix="CEI_")

    default_n: int = 1024
    local_time_n: int = 4096
    default_paths: int = 10_000
    paths_per_side: int = 5_000
    seed: int = 20240601
    alpha: float = 0.001
    local_time_epsilon: float = 0.02
    max_attempts: int = 1_000_000
    block_size: int = 256
    workers: int = 1
    emit_paths: int = 32
    out_dir: Path = Path("./runs")
    schema_dir: Path | None = None
    format: str = "json"
    log_level: str = "INFO"
