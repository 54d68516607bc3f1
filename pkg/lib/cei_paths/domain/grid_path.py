"""GridPath value object - a cadlag path observed on the uniform grid k/n."""

from collections.abc import Sequence

import numpy as np

from cei_paths.domain.errors import NonFiniteError, NonZeroStartError, TooShortError


class GridPath:
    """Immutable path with values[k] = X_{k/n}, k = 0..n, and values[0] = 0."""

    __slots__ = ("_values",)

    def __init__(self, values: Sequence[float] | np.ndarray):
        """Create a GridPath, validating the grid invariants.

        Args:
            values: n+1 finite reals starting at 0

        Raises:
            TooShortError: If fewer than 3 values are given
            NonFiniteError: If any value is NaN or infinite
            NonZeroStartError: If values[0] != 0
        """
        array = np.array(values, dtype=float)
        if array.ndim != 1 or array.size < 3:
            raise TooShortError(int(array.size))

        finite = np.isfinite(array)
        if not finite.all():
            raise NonFiniteError(int(np.argmin(finite)))

        if array[0] != 0.0:
            raise NonZeroStartError(float(array[0]))

        # -0.0 start is normalised so serialised paths always begin with 0
        array[0] = 0.0
        array.setflags(write=False)
        self._values = array

    @property
    def values(self) -> np.ndarray:
        """Read-only view of the n+1 grid values."""
        return self._values

    @property
    def n(self) -> int:
        """Number of grid cells."""
        return self._values.size - 1

    @property
    def endpoint(self) -> float:
        """Value at time 1."""
        return float(self._values[-1])

    def times(self) -> np.ndarray:
        """Grid times k/n for k = 0..n."""
        return np.arange(self.n + 1) / self.n

    def to_list(self) -> list[float]:
        """Convert to a plain list of floats."""
        return self._values.tolist()

    def __len__(self) -> int:
        return self._values.size

    def __getitem__(self, index):
        return self._values[index]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GridPath):
            return NotImplemented
        return np.array_equal(self._values, other._values)

    __hash__ = None

    def __repr__(self) -> str:
        return f"GridPath(n={self.n}, endpoint={self.endpoint!r})"


def make_grid_path(values: Sequence[float] | np.ndarray) -> GridPath:
    """Validate raw values and wrap them as a GridPath with n = len(values) - 1.

    Examples:
        >>> make_grid_path([0, 1, -1, 2]).n
        3
    """
    return GridPath(values)
