"""Deterministic functionals of grid paths.

Cyclic shift, extrema, amplitude, time reversal, the shifted-minimum
profile and the reflected process. All functions are pure.
"""

import numpy as np

from cei_paths.domain.errors import IndexOutOfRangeError, NegativeEndpointError
from cei_paths.domain.grid_path import GridPath
from cei_paths.domain.profiles import ReflectedProfile


def _unrolled(values: np.ndarray) -> np.ndarray:
    """Values over two periods: f(t) on [0,1] followed by f(t-1) + f(1) on (1,2]."""
    return np.concatenate((values, values[1:] + values[-1]))


def cyclic_shift(path: GridPath, j: int) -> GridPath:
    """Shift a path at grid time j/n, keeping its values at 0 and 1.

    result[k] = values[j+k] - values[j]                    if j+k <= n
    result[k] = values[j+k-n] + values[n] - values[j]      otherwise

    Args:
        path: Path to shift
        j: Grid index in 0..n (j = n is the identity, like j = 0)

    Returns:
        The shifted path

    Raises:
        IndexOutOfRangeError: If j is outside 0..n

    Examples:
        >>> cyclic_shift(GridPath([0, 1, -1, 0.5, 2]), 2).to_list()
        [0.0, 1.5, 3.0, 4.0, 2.0]
    """
    n = path.n
    if not 0 <= j <= n:
        raise IndexOutOfRangeError(j, n)

    values = path.values
    shifted = _unrolled(values)[j : j + n + 1] - values[j]
    shifted[0] = 0.0
    shifted[n] = values[n]
    return GridPath(shifted)


def minimum(path: GridPath) -> float:
    """Overall minimum of the grid values."""
    return float(path.values.min())


def maximum(path: GridPath) -> float:
    """Overall maximum of the grid values."""
    return float(path.values.max())


def argmin_first(path: GridPath) -> int:
    """Smallest grid index attaining the minimum (exact float ties go to the first)."""
    return int(np.argmin(path.values))


def argmax_first(path: GridPath) -> int:
    """Smallest grid index attaining the maximum."""
    return int(np.argmax(path.values))


def amplitude(path: GridPath) -> float:
    """Range max - min of the path."""
    values = path.values
    return float(values.max() - values.min())


def time_reversal(path: GridPath) -> GridPath:
    """Time-reversed path result[k] = values[n] - values[n-k].

    The left-limit convention of the continuous reversal is not tracked on
    the grid: jumps are already snapped to grid times.

    Examples:
        >>> time_reversal(GridPath([0, 1, -1, 2])).to_list()
        [0.0, 3.0, 1.0, 2.0]
    """
    values = path.values
    return GridPath(values[-1] - values[::-1])


def shifted_min_profile(path: GridPath) -> np.ndarray:
    """Minimum of every shifted path, m[j] = minimum(cyclic_shift(path, j)), j = 0..n-1.

    Computed in O(n) from suffix and prefix minima. The arithmetic mirrors
    cyclic_shift term by term, so the identity with the brute-force minimum
    holds exactly, not just up to rounding.

    Examples:
        >>> shifted_min_profile(GridPath([0, 1, -1, 2])).tolist()
        [-1.0, -2.0, 0.0]
    """
    return shifted_min_profile_batch(path.values[None, :])[0]


def shifted_min_profile_batch(values: np.ndarray) -> np.ndarray:
    """Row-wise shifted-minimum profile of a (paths, n+1) array of grid paths."""
    n = values.shape[1] - 1
    end = values[:, n:]

    suffix_min = np.minimum.accumulate(values[:, ::-1], axis=1)[:, ::-1][:, :n]

    # min over values[1..j-1]; +inf when the range is empty (j <= 1)
    prefix_min = np.full((values.shape[0], n), np.inf)
    prefix_min[:, 2:] = np.minimum.accumulate(values[:, 1 : n - 1], axis=1)
    wrapped = prefix_min + end

    head = values[:, :n]
    profile = np.minimum(suffix_min - head, wrapped - head)
    # the pinned endpoint of every shifted path
    return np.minimum(profile, end)


def reflected_process(path: GridPath) -> ReflectedProfile:
    """Reflected process R[j] = -minimum(cyclic_shift(path, j)) with R[n] = R[0].

    Defined through the shifted-minimum profile, which is the meaning of
    R = X - J when X_1 >= 0. For a bridge this is values - min(values).

    Raises:
        NegativeEndpointError: If the path ends below 0
    """
    if path.endpoint < 0:
        raise NegativeEndpointError(path.endpoint)

    reflected = -shifted_min_profile(path)
    return ReflectedProfile(values=np.append(reflected, reflected[0]))


def cyclic_distance(i: int, j: int, n: int) -> float:
    """Distance between grid cells i and j on the circle of n cells, divided by n."""
    gap = abs(i - j) % n
    return min(gap, n - gap) / n
