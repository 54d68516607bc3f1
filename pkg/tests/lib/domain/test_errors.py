"""Tests for domain exceptions."""

import pytest
from cei_paths.domain.errors import (
    CEIPathError,
    EmptyLocalTimeError,
    IndexOutOfRangeError,
    MaxAttemptsExceededError,
    NegativeEndpointError,
    NoPassageError,
    NonZeroStartError,
    UnknownExperimentError,
    ValidationFailedError,
)


def test_non_zero_start_error():
    """Test NonZeroStartError carries the offending value."""
    with pytest.raises(NonZeroStartError) as exc_info:
        raise NonZeroStartError(0.5)

    error = exc_info.value
    assert error.start == 0.5
    assert "0.5" in str(error)


def test_index_out_of_range_error():
    """Test IndexOutOfRangeError contains the index and the grid size."""
    error = IndexOutOfRangeError(7, 4)

    assert error.index == 7
    assert error.n == 4
    assert "7" in str(error)
    assert "0..4" in str(error)


def test_endpoint_errors():
    """Test that the endpoint errors carry the endpoint and stay ValueErrors."""
    for error in (NoPassageError(-0.5), NegativeEndpointError(-0.5)):
        assert error.endpoint == -0.5
        assert "-0.5" in str(error)
        assert isinstance(error, ValueError)


def test_max_attempts_exceeded_error():
    """Test MaxAttemptsExceededError reports attempts and accepted count."""
    error = MaxAttemptsExceededError(1000, accepted=3)

    assert error.attempts == 1000
    assert error.accepted == 3


def test_empty_local_time_error():
    """Test EmptyLocalTimeError contains level and band width."""
    error = EmptyLocalTimeError(0.5, 0.02)

    assert error.level == 0.5
    assert error.epsilon == 0.02


def test_validation_failed_error():
    """Test ValidationFailedError contains validation details."""
    errors = [{"message": "bad", "path": ["n"]}]

    error = ValidationFailedError(errors)

    assert error.errors == errors
    assert "1 error" in str(error)


def test_errors_share_a_base_class():
    """Test that every library error can be caught as CEIPathError and ValueError."""
    for error in (NonZeroStartError(1.0), UnknownExperimentError("x"), ValidationFailedError([])):
        assert isinstance(error, CEIPathError)
        assert isinstance(error, ValueError)
