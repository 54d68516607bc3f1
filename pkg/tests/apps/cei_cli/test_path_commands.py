"""Tests for the sample and transform commands."""

import json

from cei_paths.storage.file_storage import load_samples
from cei_paths.utils.path_functionals import minimum


def test_sample_paths_defaults(app, settings):
    """Test that sample writes emit_paths bridges to the default file."""
    from apps.cei_cli.commands.path_commands import sample_paths

    result = sample_paths(app, "bridge", seed=3)

    assert result["file"] == str(settings.out_dir / "bridge.samples.json")
    assert result["n"] == 64
    assert result["paths"] == 8
    assert result["seed"] == 3
    paths, header = load_samples(result["file"])
    assert len(paths) == 8
    assert all(path.endpoint == 0.0 for path in paths)
    assert header["master_seed"] == 3


def test_sample_paths_csv(app, tmp_path):
    """Test CSV output with an explicit destination."""
    from apps.cei_cli.commands.path_commands import sample_paths

    out = tmp_path / "ei.csv"
    result = sample_paths(
        app, "ei", n=128, paths=3, betas=(0.6, -0.4), sigma=1.0, out=str(out), fmt="csv"
    )

    lines = out.read_text().splitlines()
    assert result["file"] == str(out)
    assert lines[0].startswith("# n=128 ")
    assert len(lines) == 5


def test_sample_paths_is_reproducible(app, tmp_path):
    """Test that the same seed writes the same paths."""
    from apps.cei_cli.commands.path_commands import sample_paths

    first = sample_paths(app, "bessel3", seed=1, out=str(tmp_path / "a.json"))
    second = sample_paths(app, "bessel3", seed=1, out=str(tmp_path / "b.json"))

    assert load_samples(first["file"])[0] == load_samples(second["file"])[0]


def test_sample_paths_invalid_arguments(app):
    """Test error dicts for bad process knobs."""
    from apps.cei_cli.commands.path_commands import sample_paths

    walk = sample_paths(app, "walk")
    bessel = sample_paths(app, "bessel3-bridge", x=-1.0)

    assert walk["error"] == "invalid-arguments"
    assert bessel["error"] == "invalid-arguments"
    assert walk["details"]


def test_transform_fresh_paths(app):
    """Test the condition-min transform on freshly drawn bridges."""
    from apps.cei_cli.commands.path_commands import transform_paths

    result = transform_paths(app, "condition-min", interval="(-0.4,-0.1]", seed=2)

    assert result["accepted"] + result["rejected"] == 8
    assert len(result["nu"]) == result["accepted"]
    paths, _ = load_samples(result["file"])
    assert all(-0.4 < minimum(path) <= -0.1 for path in paths)


def test_transform_input_file(app, tmp_path):
    """Test the Vervaat transform of a samples file."""
    from apps.cei_cli.commands.path_commands import sample_paths, transform_paths

    sampled = sample_paths(app, "bridge", out=str(tmp_path / "in.json"))
    result = transform_paths(
        app, "vervaat", input_file=sampled["file"], out=str(tmp_path / "out.json")
    )

    assert result["accepted"] == 8
    document = json.loads((tmp_path / "out.json").read_text())
    assert min(min(row) for row in document["paths"]) >= 0.0


def test_transform_fixed_uniform(app, tmp_path):
    """Test that --u fixes the shift index of every path."""
    from apps.cei_cli.commands.path_commands import transform_paths

    result = transform_paths(app, "shift", u=0.5, out=str(tmp_path / "s.json"))

    assert result["nu"] == [32] * 8


def test_transform_errors(app, tmp_path):
    """Test the error dicts of the transform command."""
    from apps.cei_cli.commands.path_commands import transform_paths

    missing = transform_paths(app, "vervaat", input_file=str(tmp_path / "missing.json"))
    no_interval = transform_paths(app, "condition-min")
    bad_op = transform_paths(app, "rotate")
    bad_interval = transform_paths(app, "condition-min", interval="[-1,0.5]")

    assert missing["error"] == "artifact-io"
    assert no_interval["error"] == "command-failed"
    assert bad_op["error"] == "command-failed"
    assert bad_interval["error"] == "invalid-arguments"
