"""Tests for EIParams and ProcessSpec."""

import math

import pytest
from cei_paths.domain.process_spec import EIParams, ProcessKind, ProcessSpec
from pydantic import ValidationError


def test_ei_params_defaults():
    """Test that the default parameters describe the zero process."""
    params = EIParams()

    assert params.alpha == 0.0
    assert params.sigma == 0.0
    assert params.betas == ()


def test_ei_params_reject_zero_jump():
    """Test that zero jump sizes are rejected."""
    with pytest.raises(ValidationError):
        EIParams(betas=(0.6, 0.0))


def test_ei_params_reject_negative_sigma():
    """Test that sigma must be nonnegative."""
    with pytest.raises(ValidationError):
        EIParams(sigma=-1.0)


def test_ei_params_reject_non_finite():
    """Test that infinite drift is rejected."""
    with pytest.raises(ValidationError):
        EIParams(alpha=math.inf)


def test_process_spec_from_string_kind():
    """Test that kinds are accepted by their CLI names."""
    spec = ProcessSpec(kind="bessel3-bridge", x=1.0)

    assert spec.kind is ProcessKind.BESSEL3_BRIDGE


def test_process_spec_checks_kind_knobs():
    """Test the per-kind constraints."""
    with pytest.raises(ValidationError):
        ProcessSpec(kind="bessel3-bridge", x=-1.0)
    with pytest.raises(ValidationError):
        ProcessSpec(kind="walk")

    walk = ProcessSpec(kind="walk", increments=(1.0, -1.0))
    assert walk.increments == (1.0, -1.0)
