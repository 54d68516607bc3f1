"""Interval value object - the conditioning target for the minimum."""

import math

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from cei_paths.domain.errors import InvalidIntervalError


class Interval(BaseModel):
    """Real interval I contained in (-inf, 0] with open/closed endpoint flags.

    A degenerate point interval [a, a] is allowed when both ends are closed,
    which is how exact enumeration conditions on {min = a}.
    """

    model_config = ConfigDict(frozen=True)

    lo: float = Field(..., description="Lower endpoint (may be -inf)")
    hi: float = Field(..., description="Upper endpoint, at most 0")
    lo_open: bool = Field(False, description="Whether lo is excluded")
    hi_open: bool = Field(False, description="Whether hi is excluded")

    @model_validator(mode="after")
    def _check_bounds(self) -> "Interval":
        if math.isnan(self.lo) or math.isnan(self.hi):
            raise InvalidIntervalError("endpoints must not be NaN")
        if self.hi > 0:
            raise InvalidIntervalError(f"must lie in (-inf, 0], got hi={self.hi}")
        if self.lo > self.hi:
            raise InvalidIntervalError(f"needs lo <= hi, got [{self.lo}, {self.hi}]")
        if self.lo == self.hi and (self.lo_open or self.hi_open):
            raise InvalidIntervalError("a point interval must be closed at both ends")
        return self

    @classmethod
    def closed(cls, lo: float, hi: float) -> "Interval":
        return cls(lo=lo, hi=hi)

    @classmethod
    def left_open(cls, lo: float, hi: float) -> "Interval":
        """Interval (lo, hi], the shape used for {min > -eps}."""
        return cls(lo=lo, hi=hi, lo_open=True)

    @classmethod
    def point(cls, value: float) -> "Interval":
        return cls(lo=value, hi=value)

    @classmethod
    def parse(cls, text: str) -> "Interval":
        """Parse "lo,hi" (closed) or bracket notation such as "(-0.4,-0.1]".

        Examples:
            >>> Interval.parse("(-0.4,-0.1]").lo_open
            True
        """
        text = text.strip()
        lo_open = text.startswith("(")
        hi_open = text.endswith(")")
        parts = text.lstrip("([").rstrip(")]").split(",")
        if len(parts) != 2:
            raise InvalidIntervalError(f"expected 'lo,hi', got {text!r}")
        try:
            lo, hi = (float(part) for part in parts)
        except ValueError as e:
            raise InvalidIntervalError(f"endpoints must be numbers, got {text!r}") from e
        return cls(lo=lo, hi=hi, lo_open=lo_open, hi_open=hi_open)

    def contains(self, values: np.ndarray | float) -> np.ndarray | bool:
        """Vectorised membership test honouring the endpoint flags."""
        values = np.asarray(values, dtype=float)
        above = values > self.lo if self.lo_open else values >= self.lo
        below = values < self.hi if self.hi_open else values <= self.hi
        result = above & below
        return bool(result) if result.ndim == 0 else result

    def __str__(self) -> str:
        left = "(" if self.lo_open else "["
        right = ")" if self.hi_open else "]"
        return f"{left}{self.lo}, {self.hi}{right}"
