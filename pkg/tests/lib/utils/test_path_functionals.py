"""Tests for the deterministic path functionals."""

import numpy as np
import pytest
from cei_paths.domain.errors import IndexOutOfRangeError, NegativeEndpointError
from cei_paths.domain.grid_path import GridPath
from cei_paths.utils.path_functionals import (
    amplitude,
    argmax_first,
    argmin_first,
    cyclic_distance,
    cyclic_shift,
    maximum,
    minimum,
    reflected_process,
    shifted_min_profile,
    shifted_min_profile_batch,
    time_reversal,
)
from hypothesis import given, settings
from hypothesis import strategies as st

increments = st.lists(
    st.floats(min_value=-1.0, max_value=1.0, allow_nan=False, allow_infinity=False),
    min_size=2,
    max_size=24,
)


def _path(steps: list[float]) -> GridPath:
    return GridPath(np.concatenate(([0.0], np.cumsum(steps))))


def test_cyclic_shift_example():
    """Test a shift that wraps around time 1."""
    path = GridPath([0, 1, -1, 0.5, 2])

    assert cyclic_shift(path, 2).to_list() == [0.0, 1.5, 3.0, 4.0, 2.0]


def test_cyclic_shift_ends_are_identity():
    """Test that shifting at 0 or at n leaves the path unchanged."""
    path = GridPath([0, 2, -1, 3, -2])

    assert cyclic_shift(path, 0) == path
    assert cyclic_shift(path, path.n) == path


def test_cyclic_shift_index_out_of_range():
    """Test that indices outside 0..n are rejected."""
    path = GridPath([0, 1, -1, 2])

    with pytest.raises(IndexOutOfRangeError) as exc_info:
        cyclic_shift(path, 4)
    assert exc_info.value.n == 3

    with pytest.raises(IndexOutOfRangeError):
        cyclic_shift(path, -1)


def test_extrema_and_amplitude():
    """Test min, max, first arg-extrema and the range."""
    path = GridPath([0, 2, -1, 2, -1])

    assert minimum(path) == -1.0
    assert maximum(path) == 2.0
    assert argmin_first(path) == 2
    assert argmax_first(path) == 1
    assert amplitude(path) == 3.0


def test_time_reversal_example():
    """Test reversal of a short path."""
    assert time_reversal(GridPath([0, 1, -1, 2])).to_list() == [0.0, 3.0, 1.0, 2.0]


def test_shifted_min_profile_example():
    """Test the minimum of every shifted path."""
    assert shifted_min_profile(GridPath([0, 1, -1, 2])).tolist() == [-1.0, -2.0, 0.0]


def test_shifted_min_profile_batch_matches_rows():
    """Test that the batch profile equals the per-path profile row by row."""
    rng = np.random.default_rng(3)
    values = np.zeros((5, 17))
    values[:, 1:] = np.cumsum(rng.normal(size=(5, 16)), axis=1)

    batch = shifted_min_profile_batch(values)

    for row, profile in zip(values, batch, strict=True):
        np.testing.assert_array_equal(profile, shifted_min_profile(GridPath(row)))


def test_reflected_process_of_increasing_path():
    """Test that a nondecreasing path has a zero reflected process."""
    assert reflected_process(GridPath([0, 1, 2])).values.tolist() == [0.0, 0.0, 0.0]


def test_reflected_process_of_bridge():
    """Test that for a bridge R equals values - min(values)."""
    path = GridPath([0, -1, 0.5, -0.5, 0])

    reflected = reflected_process(path)

    np.testing.assert_array_equal(reflected.values, path.values - minimum(path))


def test_reflected_process_needs_nonnegative_endpoint():
    """Test that a path ending below 0 is rejected."""
    with pytest.raises(NegativeEndpointError):
        reflected_process(GridPath([0, 1, -1]))


def test_cyclic_distance():
    """Test distance on the circle of cells."""
    assert cyclic_distance(1, 9, 10) == 0.2
    assert cyclic_distance(3, 3, 10) == 0.0
    assert cyclic_distance(0, 5, 10) == 0.5


@settings(max_examples=200, deadline=None)
@given(increments, st.data())
def test_profile_equals_brute_force_minimum(steps, data):
    """Test that the profile equals the minimum of each shifted path exactly."""
    path = _path(steps)
    profile = shifted_min_profile(path)

    j = data.draw(st.integers(min_value=0, max_value=path.n - 1))

    assert profile[j] == minimum(cyclic_shift(path, j))


@settings(max_examples=200, deadline=None)
@given(increments, st.data())
def test_shift_keeps_endpoints(steps, data):
    """Test that every shift starts at 0 and keeps the value at time 1."""
    path = _path(steps)
    j = data.draw(st.integers(min_value=0, max_value=path.n))

    shifted = cyclic_shift(path, j)

    assert shifted[0] == 0.0
    assert shifted.endpoint == path.endpoint


@settings(max_examples=200, deadline=None)
@given(increments, st.data())
def test_shifts_compose_cyclically(steps, data):
    """Test that shifting at i then j equals shifting at (i + j) mod n."""
    path = _path(steps)
    i = data.draw(st.integers(min_value=0, max_value=path.n - 1))
    j = data.draw(st.integers(min_value=0, max_value=path.n - 1))

    twice = cyclic_shift(cyclic_shift(path, i), j)
    once = cyclic_shift(path, (i + j) % path.n)

    np.testing.assert_allclose(twice.values, once.values, rtol=0, atol=1e-12)


@settings(max_examples=200, deadline=None)
@given(increments)
def test_time_reversal_is_an_involution(steps):
    """Test that reversing twice returns the path."""
    path = _path(steps)

    np.testing.assert_allclose(
        time_reversal(time_reversal(path)).values, path.values, rtol=0, atol=1e-12
    )


@settings(max_examples=200, deadline=None)
@given(increments)
def test_reflected_process_is_nonnegative(steps):
    """Test that R >= 0 and R[n] = R[0] whenever the endpoint is nonnegative."""
    path = _path(steps)
    if path.endpoint < 0:
        path = GridPath(-path.values)

    reflected = reflected_process(path).values

    assert (reflected >= 0).all()
    assert reflected[-1] == reflected[0]


@settings(max_examples=200, deadline=None)
@given(increments, st.data())
def test_cyclic_shift_keeps_the_amplitude_of_a_bridge(steps, data):
    """Test that a shifted bridge has the same max - min as the original."""
    values = _path(steps).values.copy()
    values[-1] = 0.0
    path = GridPath(values)
    j = data.draw(st.integers(min_value=0, max_value=path.n))

    assert amplitude(cyclic_shift(path, j)) == pytest.approx(amplitude(path), abs=1e-12)
