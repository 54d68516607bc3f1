"""Grid profiles derived from a path: occupation, reflection, local time, shift results."""

from dataclasses import dataclass

import numpy as np

from cei_paths.domain.grid_path import GridPath
from cei_paths.domain.interval import Interval


@dataclass(frozen=True)
class OccupationProfile:
    """Shifted-minimum profile m and occupation process A^I on the grid.

    m[j] is the minimum of the path shifted at j/n (j = 0..n-1) and
    A[k] = (1/n) * #{j < k : m[j] in I} (k = 0..n).
    """

    m: np.ndarray
    A: np.ndarray
    interval: Interval

    @property
    def n(self) -> int:
        return self.m.size

    @property
    def occupied(self) -> np.ndarray:
        """Indices j with m[j] in I, in increasing order."""
        return np.flatnonzero(self.interval.contains(self.m))

    @property
    def total(self) -> float:
        """A_1^I, the total occupation time."""
        return float(self.A[-1])


@dataclass(frozen=True)
class ReflectedProfile:
    """Reflected process R = -(shifted minimum) with R[n] = R[0] by cyclic convention."""

    values: np.ndarray

    @property
    def n(self) -> int:
        return self.values.size - 1


@dataclass(frozen=True)
class LocalTimeEstimate:
    """Occupation-density approximation of the local time of R at level y.

    L[k] = (1/eps) * (1/n) * #{j < k : |R[j] - y| <= eps}.
    """

    y: float
    epsilon: float
    L: np.ndarray
    band: np.ndarray

    @property
    def n(self) -> int:
        return self.L.size - 1

    @property
    def total(self) -> float:
        return float(self.L[-1])


@dataclass(frozen=True)
class ShiftResult:
    """Outcome of a random-shift transform.

    path and nu_index are None exactly when conditioning_event is False.
    """

    path: GridPath | None
    nu_index: int | None
    conditioning_event: bool

    @classmethod
    def rejected(cls) -> "ShiftResult":
        return cls(path=None, nu_index=None, conditioning_event=False)
