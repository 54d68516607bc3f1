"""Test fixtures for CLI command tests."""

import pytest
from cei_paths.config import SimulationSettings


@pytest.fixture
def settings(tmp_path):
    """Return SimulationSettings writing under tmp_path with small defaults."""
    return SimulationSettings(
        out_dir=tmp_path / "runs",
        default_n=64,
        default_paths=200,
        paths_per_side=200,
        emit_paths=8,
        block_size=64,
    )


@pytest.fixture
def app(settings):
    """Return a CEIApp for tests."""
    from apps.cei_cli.app import CEIApp

    return CEIApp(settings)
