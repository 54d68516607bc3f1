"""
Transform service - random cyclic shifts that condition the minimum of a path

Occupation-time shift, Vervaat transform, local-time shift, first-passage
shifts and the Bessel-3 to bridge map. Every random choice enters through an
explicit uniform u in [0, 1), so the transforms themselves are pure.
"""

import logging
import math
from enum import StrEnum

import numpy as np

from cei_paths.domain.errors import (
    EmptyLocalTimeError,
    EmptyOccupationError,
    NegativeEndpointError,
    NoPassageError,
)
from cei_paths.domain.grid_path import GridPath
from cei_paths.domain.interval import Interval
from cei_paths.domain.profiles import (
    LocalTimeEstimate,
    OccupationProfile,
    ReflectedProfile,
    ShiftResult,
)
from cei_paths.utils.path_functionals import (
    argmin_first,
    cyclic_shift,
    reflected_process,
    shifted_min_profile,
    shifted_min_profile_batch,
    time_reversal,
)

logger = logging.getLogger(__name__)


def _check_uniform(u: float) -> None:
    if not 0.0 <= u < 1.0:
        raise ValueError(f"u must lie in [0, 1), got {u}")


def _select_occupied(occupied: np.ndarray, u: float) -> int:
    """Occupied cell whose rank first exceeds u * count (uniform u picks a uniform cell)."""
    return int(occupied[math.floor(u * occupied.size)])


# --- Occupation-time shift -----------------------------------------------------


def occupation_process(path: GridPath, interval: Interval) -> OccupationProfile:
    """Occupation process A^I of the shift parameter in cells whose shifted minimum is in I.

    Examples:
        >>> p = GridPath([0, -1, 1, 0])
        >>> occupation_process(p, Interval.left_open(-1.5, 0)).A.tolist()
        [0.0, 0.3333333333333333, 0.6666666666666666, 0.6666666666666666]
    """
    m = shifted_min_profile(path)
    inside = interval.contains(m)
    A = np.concatenate(([0.0], np.cumsum(inside))) / path.n
    return OccupationProfile(m=m, A=A, interval=interval)


def occupation_time_batch(values: np.ndarray, interval: Interval) -> np.ndarray:
    """Total occupation time A_1^I of every row of a (paths, n+1) array."""
    return interval.contains(shifted_min_profile_batch(values)).mean(axis=1)


def nu_from_occupation(profile: OccupationProfile, u: float) -> int:
    """Random shift time nu = inf{t : A_t = u A_1} realised on the grid.

    Returns the occupied cell of rank floor(u * count) + 1, i.e. the first cell
    at which A strictly exceeds u * A_1.

    Raises:
        EmptyOccupationError: If A_1 = 0 (no shift puts the minimum in I)
    """
    _check_uniform(u)
    occupied = profile.occupied
    if occupied.size == 0:
        raise EmptyOccupationError(str(profile.interval))
    return _select_occupied(occupied, u)


def condition_min_transform(path: GridPath, interval: Interval, u: float) -> ShiftResult:
    """Shift the path at a uniform occupied cell so that its minimum lands in I.

    Returns a rejected ShiftResult when the conditioning event {A_1 > 0} fails.
    """
    profile = occupation_process(path, interval)
    try:
        nu = nu_from_occupation(profile, u)
    except EmptyOccupationError:
        logger.debug("no shifted minimum of the path falls in %s", interval)
        return ShiftResult.rejected()
    return ShiftResult(path=cyclic_shift(path, nu), nu_index=nu, conditioning_event=True)


def epsilon_shift_transform(path: GridPath, epsilon: float, u: float) -> ShiftResult:
    """Shift at a uniform cell of {X - min X < eps}: conditions a bridge on {min > -eps}."""
    if epsilon <= 0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    return condition_min_transform(path, Interval.left_open(-epsilon, 0.0), u)


def uniform_reshift(path: GridPath, u: float) -> GridPath:
    """Shift at the grid cell floor(u n), the converse direction of the random shifts."""
    _check_uniform(u)
    return cyclic_shift(path, math.floor(u * path.n))


# --- Vervaat ----------------------------------------------------------------------


def vervaat(path: GridPath) -> GridPath:
    """Shift at the first argmin; a bridge becomes a nonnegative excursion-like path.

    Examples:
        >>> vervaat(GridPath([0, -1, 0.5, 0])).to_list()
        [0.0, 1.5, 1.0, 0.0]
    """
    return cyclic_shift(path, argmin_first(path))


# --- Local-time shift ----------------------------------------------------------


def local_time_estimate(
    reflected: ReflectedProfile, y: float, epsilon: float
) -> LocalTimeEstimate:
    """Occupation-density estimate of the local time of R at level y.

    L[k] = (1/eps)(1/n) #{j < k : |R[j] - y| <= eps}
    """
    if epsilon <= 0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    n = reflected.n
    band = np.abs(reflected.values[:n] - y) <= epsilon
    L = np.concatenate(([0.0], np.cumsum(band))) / (epsilon * n)
    return LocalTimeEstimate(y=y, epsilon=epsilon, L=L, band=band)


def local_time_nu(estimate: LocalTimeEstimate, u: float) -> int:
    """nu = inf{t : L_t > u L_1}: the band cell whose inclusion pushes L past u L_1.

    Raises:
        EmptyLocalTimeError: If L_1 = 0
    """
    _check_uniform(u)
    cells = np.flatnonzero(estimate.band)
    if cells.size == 0:
        raise EmptyLocalTimeError(estimate.y, estimate.epsilon)
    return _select_occupied(cells, u)


def condition_min_value_transform(
    path: GridPath,
    y: float,
    epsilon: float,
    u: float,
    level: float | None = None,
) -> ShiftResult:
    """Condition the minimum to be (approximately) y via the local time of R.

    The event {min = y} corresponds to level -y of R = -(shifted minimum);
    pass `level` to address R directly instead.

    Raises:
        NegativeEndpointError: If the path ends below 0
    """
    if y > 0:
        raise ValueError(f"the minimum level y must be <= 0, got {y}")
    _check_uniform(u)
    reflected = reflected_process(path)
    estimate = local_time_estimate(reflected, -y if level is None else level, epsilon)
    try:
        nu = local_time_nu(estimate, u)
    except EmptyLocalTimeError:
        logger.debug("local time vanishes at level %s (epsilon=%s)", estimate.y, epsilon)
        return ShiftResult.rejected()
    return ShiftResult(path=cyclic_shift(path, nu), nu_index=nu, conditioning_event=True)


# --- First-passage shifts -----------------------------------------------------


def first_passage_transform(path: GridPath, x: float, u: float) -> ShiftResult:
    """Shift at nu = inf{t : L_t > u x}, L the local time at 0 of the reflected process.

    On the grid R vanishes exactly at the times t >= argmin where X_t is the
    future infimum and X_t - min X <= X_1; these are the shifts leaving the
    path nonnegative. L grows by the height X_t - min X between them, so nu is
    the first such time whose height reaches u x. When no grid time is that
    high the local time wraps around to the argmin. With x = 0 this is the
    Vervaat transform.

    Applied to a bridge from 0 to x this yields a Bessel-3 bridge to x.

    Examples:
        >>> first_passage_transform(GridPath([0, -1, 0.5, 0, 1.5, 1]), 1.0, 0.5).path.to_list()
        [0.0, 1.5, 1.0, 0.0, 1.5, 1.0]

    Raises:
        NegativeEndpointError: If x < 0
        NoPassageError: If the path ends below 0 (no shift is nonnegative)
    """
    if x < 0:
        raise NegativeEndpointError(x)
    _check_uniform(u)
    if path.endpoint < 0:
        raise NoPassageError(path.endpoint)

    values = path.values
    zeros = np.flatnonzero(reflected_process(path).values[: path.n] <= 0.0)
    heights = values[zeros] - values.min()
    reached = np.flatnonzero(heights >= u * x)
    nu = int(zeros[reached[0]] if reached.size else zeros[0])
    return ShiftResult(path=cyclic_shift(path, nu), nu_index=nu, conditioning_event=True)


def meander_transform(path: GridPath, u: float) -> ShiftResult:
    """First-passage shift with x = X_1.

    For B sgn(B_1) size-biased by its endpoint this gives the Brownian meander.
    """
    return first_passage_transform(path, path.endpoint, u)


# --- Bessel-3 to bridge -------------------------------------------------------


def bes3_to_bridge(path: GridPath, u: float) -> GridPath:
    """Shift a Bessel-3 path at round(u n) and remove the drift line t X_1."""
    _check_uniform(u)
    n = path.n
    shifted = cyclic_shift(path, int(math.floor(u * n + 0.5)))
    bridge = shifted.values - path.times() * path.endpoint
    bridge[n] = 0.0
    return GridPath(bridge)


# --- Dispatch -------------------------------------------------------------------


class TransformOp(StrEnum):
    """Names accepted by `cei transform --op`."""

    SHIFT = "shift"
    VERVAAT = "vervaat"
    CONDITION_MIN = "condition-min"
    CONDITION_MIN_VALUE = "condition-min-value"
    FIRST_PASSAGE = "first-passage"
    MEANDER = "meander"
    BES3_TO_BRIDGE = "bes3-to-bridge"
    REVERSE = "reverse"


def apply_transform(
    op: TransformOp,
    path: GridPath,
    u: float,
    *,
    j: int | None = None,
    interval: Interval | None = None,
    y: float | None = None,
    epsilon: float | None = None,
    x: float | None = None,
) -> ShiftResult:
    """Apply a named transform, wrapping deterministic ones in an accepted ShiftResult."""
    match TransformOp(op):
        case TransformOp.SHIFT:
            index = math.floor(u * path.n) if j is None else j
            return ShiftResult(cyclic_shift(path, index), index, True)
        case TransformOp.VERVAAT:
            return ShiftResult(vervaat(path), argmin_first(path), True)
        case TransformOp.CONDITION_MIN:
            if interval is None:
                raise ValueError("condition-min needs an interval")
            return condition_min_transform(path, interval, u)
        case TransformOp.CONDITION_MIN_VALUE:
            if y is None or epsilon is None:
                raise ValueError("condition-min-value needs y and epsilon")
            return condition_min_value_transform(path, y, epsilon, u)
        case TransformOp.FIRST_PASSAGE:
            return first_passage_transform(path, 0.0 if x is None else x, u)
        case TransformOp.MEANDER:
            return meander_transform(path, u)
        case TransformOp.BES3_TO_BRIDGE:
            return ShiftResult(bes3_to_bridge(path, u), int(math.floor(u * path.n + 0.5)), True)
        case TransformOp.REVERSE:
            return ShiftResult(time_reversal(path), 0, True)
    raise ValueError(f"Unsupported transform: {op}")
