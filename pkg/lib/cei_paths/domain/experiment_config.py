"""ExperimentConfig - the knobs of one verification run."""

from enum import StrEnum
from pathlib import Path

from pydantic import BaseModel, Field, field_validator

from cei_paths.domain.interval import Interval


class OutputFormat(StrEnum):
    CSV = "csv"
    JSON = "json"


class ExperimentConfig(BaseModel):
    """Configuration of a registered experiment; unset knobs use the registry defaults."""

    experiment: str = Field(..., description="Registered experiment name")
    n: int | None = Field(None, description="Grid resolution")
    paths: int | None = Field(None, description="Number of sample paths (per side)")
    seed: int = Field(20240601, ge=0, lt=2**64, description="Master seed")
    epsilon: float | None = Field(None, gt=0.0, description="Band / conditioning width")
    interval: Interval | None = Field(None, description="Conditioning interval for the minimum")
    x: float | None = Field(None, description="Bridge endpoint")
    y: float | None = Field(None, le=0.0, description="Conditioned minimum level")
    alpha: float = Field(0.001, gt=0.0, le=0.1, description="Significance level")
    out_dir: Path = Field(Path("./runs"), description="Directory for artifacts")
    format: OutputFormat = Field(OutputFormat.JSON, description="Sample file format")
    workers: int = Field(1, ge=1, description="Worker threads for ensemble generation")
    emit_paths: int = Field(32, ge=0, description="Number of paths written to the samples file")

    @field_validator("n")
    @classmethod
    def _grid_large_enough(cls, n: int | None) -> int | None:
        if n is not None and n < 64:
            raise ValueError(f"statistical experiments need n >= 64, got {n}")
        return n

    @field_validator("paths")
    @classmethod
    def _enough_paths(cls, paths: int | None) -> int | None:
        if paths is not None and paths < 100:
            raise ValueError(f"experiments need paths >= 100, got {paths}")
        return paths

    @field_validator("interval", mode="before")
    @classmethod
    def _parse_interval(cls, value):
        if isinstance(value, str):
            return Interval.parse(value)
        if isinstance(value, (list, tuple)):
            lo, hi, *flags = value
            lo_open, hi_open = (list(flags) + [False, False])[:2]
            return Interval(lo=lo, hi=hi, lo_open=lo_open, hi_open=hi_open)
        return value

    @classmethod
    def from_settings(cls, experiment: str, settings, **overrides) -> "ExperimentConfig":
        """Build a config whose unspecified knobs come from SimulationSettings.

        Args:
            experiment: Registered experiment name
            settings: SimulationSettings instance supplying defaults
            **overrides: Explicit values (None entries are ignored)
        """
        fields = {
            "seed": settings.seed,
            "alpha": settings.alpha,
            "out_dir": settings.out_dir,
            "format": settings.format,
            "workers": settings.workers,
            "emit_paths": settings.emit_paths,
        }
        fields.update({key: value for key, value in overrides.items() if value is not None})
        return cls(experiment=experiment, **fields)

    def report_dict(self) -> dict:
        """Config echo for artifact metadata (JSON ready)."""
        data = self.model_dump(mode="json")
        if self.interval is not None:
            data["interval"] = str(self.interval)
        return data
