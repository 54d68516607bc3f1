"""Process laws that the samplers can draw from."""

import math
from enum import StrEnum

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class EIParams(BaseModel):
    """Canonical parameters (alpha, sigma, betas) of an exchangeable-increment process.

    X_t = alpha*t + sigma*b_t + sum_i beta_i * (1{U_i <= t} - t), finitely many jumps.
    """

    model_config = ConfigDict(frozen=True)

    alpha: float = Field(0.0, description="Drift, equal to X_1")
    sigma: float = Field(0.0, ge=0.0, description="Brownian bridge coefficient")
    betas: tuple[float, ...] = Field((), description="Jump sizes")

    @field_validator("alpha", "sigma")
    @classmethod
    def _finite(cls, value: float) -> float:
        if not math.isfinite(value):
            raise ValueError("must be finite")
        return value

    @field_validator("betas")
    @classmethod
    def _nonzero_jumps(cls, betas: tuple[float, ...]) -> tuple[float, ...]:
        for beta in betas:
            if not math.isfinite(beta) or beta == 0.0:
                raise ValueError(f"jump sizes must be finite and nonzero, got {beta}")
        return betas


class ProcessKind(StrEnum):
    """Names accepted by `cei sample --process`."""

    BRIDGE = "bridge"
    BM = "bm"
    EI = "ei"
    BESSEL3 = "bessel3"
    BESSEL3_BRIDGE = "bessel3-bridge"
    SIGNED_BM = "signed-bm"
    WALK = "walk"


class ProcessSpec(BaseModel):
    """A base law for sampling, including every knob the CLI exposes."""

    model_config = ConfigDict(frozen=True)

    kind: ProcessKind
    x: float = Field(0.0, description="Endpoint for bridges / Bessel-3 bridges")
    ei: EIParams = Field(default_factory=EIParams)
    increments: tuple[float, ...] = Field((), description="Multiset for the discrete walk")

    @model_validator(mode="after")
    def _check_kind_knobs(self) -> "ProcessSpec":
        if self.kind is ProcessKind.BESSEL3_BRIDGE and self.x < 0:
            raise ValueError("a Bessel-3 bridge needs x >= 0")
        if self.kind is ProcessKind.WALK and not self.increments:
            raise ValueError("the discrete walk needs a nonempty increment multiset")
        return self
