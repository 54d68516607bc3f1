"""Tests for block-parallel ensemble generation."""

import numpy as np
import pytest
from cei_paths.domain.rng_stream import RngStream
from cei_paths.services.monte_carlo import block_sizes, generate_ensemble

STREAM = RngStream(master_seed=99)


def _normals(size: int, generator: np.random.Generator) -> np.ndarray:
    return generator.normal(size=size)


def test_block_sizes():
    """Test that only the last block may be short."""
    assert block_sizes(10, 4) == [4, 4, 2]
    assert block_sizes(8, 4) == [4, 4]
    assert block_sizes(0, 4) == []


def test_block_sizes_arguments():
    """Test the argument checks."""
    with pytest.raises(ValueError):
        block_sizes(-1, 4)
    with pytest.raises(ValueError):
        block_sizes(10, 0)


def test_ensemble_independent_of_worker_count():
    """Test that threads do not change the ensemble."""
    serial = generate_ensemble(_normals, 1000, STREAM, purpose=1, block_size=64)
    parallel = generate_ensemble(_normals, 1000, STREAM, purpose=1, block_size=64, workers=4)

    assert serial.shape == (1000,)
    np.testing.assert_array_equal(serial, parallel)


def test_purposes_are_independent_streams():
    """Test that two purposes draw different numbers."""
    first = generate_ensemble(_normals, 100, STREAM, purpose=1)
    second = generate_ensemble(_normals, 100, STREAM, purpose=2)

    assert not np.array_equal(first, second)


def test_tuple_results_are_joined_componentwise():
    """Test that tuple-valued blocks are concatenated per component."""

    def pairs(size, generator):
        values = generator.random(size)
        return values, 2 * values

    left, right = generate_ensemble(pairs, 50, STREAM, purpose=3, block_size=16)

    assert left.shape == (50,)
    np.testing.assert_array_equal(right, 2 * left)


def test_empty_ensemble_rejected():
    """Test that zero draws raise."""
    with pytest.raises(ValueError):
        generate_ensemble(_normals, 0, STREAM, purpose=1)
