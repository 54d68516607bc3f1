"""Tests for the GridPath value object."""

import math

import numpy as np
import pytest
from cei_paths.domain.errors import NonFiniteError, NonZeroStartError, TooShortError
from cei_paths.domain.grid_path import GridPath, make_grid_path


def test_make_grid_path_valid():
    """Test that a valid list becomes a path with n = len - 1."""
    path = make_grid_path([0, 1, -1, 2])

    assert path.n == 3
    assert path.endpoint == 2.0
    assert path.to_list() == [0.0, 1.0, -1.0, 2.0]


def test_non_zero_start_rejected():
    """Test that a path must start at 0."""
    with pytest.raises(NonZeroStartError):
        make_grid_path([0.5, 1, 0])


def test_non_finite_rejected():
    """Test that NaN and infinite values are rejected with their index."""
    with pytest.raises(NonFiniteError) as exc_info:
        make_grid_path([0, math.nan, 0])
    assert exc_info.value.index == 1

    with pytest.raises(NonFiniteError):
        make_grid_path([0, 1, math.inf])


def test_too_short_rejected():
    """Test that at least three grid values are required."""
    with pytest.raises(TooShortError):
        make_grid_path([0, 1])


def test_values_are_read_only():
    """Test that the underlying array cannot be mutated."""
    path = GridPath([0, 1, 2])

    with pytest.raises(ValueError):
        path.values[1] = 5.0


def test_input_array_is_copied():
    """Test that mutating the source array does not change the path."""
    source = np.array([0.0, 1.0, 2.0])
    path = GridPath(source)

    source[1] = 10.0

    assert path[1] == 1.0


def test_negative_zero_start_normalised():
    """Test that a -0.0 start is stored as 0.0."""
    path = GridPath([-0.0, 1.0, 0.0])

    assert math.copysign(1.0, path[0]) == 1.0


def test_equality_and_times():
    """Test value equality and the grid times."""
    assert GridPath([0, 1, 0]) == GridPath([0.0, 1.0, 0.0])
    assert GridPath([0, 1, 0]) != GridPath([0, 2, 0])
    assert GridPath([0, 1, 0, 3, 2]).times().tolist() == [0.0, 0.25, 0.5, 0.75, 1.0]
    assert len(GridPath([0, 1, 0])) == 3
