"""Tests for ValidationService."""

import json

import pytest
from cei_paths.domain.errors import ArtifactIOError, ValidationFailedError
from cei_paths.domain.test_report import TestReport
from cei_paths.services.validation_service import (
    CONFIG_SCHEMA,
    REPORT_SCHEMA,
    ValidationService,
    load_schema,
    schema_file,
)


def test_validate_valid_document():
    """Test that validate passes for a valid document."""
    schema = {
        "type": "object",
        "properties": {"title": {"type": "string"}, "value": {"type": "number"}},
        "required": ["title"],
    }

    service = ValidationService(schema)

    service.validate({"title": "Test", "value": 42})


def test_validation_error_details():
    """Test that every violation is reported with its path."""
    schema = {
        "type": "object",
        "properties": {"title": {"type": "string"}, "value": {"type": "number"}},
        "required": ["title", "value"],
    }

    service = ValidationService(schema)

    with pytest.raises(ValidationFailedError) as exc_info:
        service.validate({"title": 123})

    errors = exc_info.value.errors
    assert len(errors) == 2
    for error in errors:
        assert {"message", "path", "validator", "validator_value"} <= set(error)
    assert ["title"] in [error["path"] for error in errors]


def test_config_schema_accepts_a_full_config():
    """Test a config using every knob."""
    service = ValidationService.for_config()

    service.validate(
        {
            "experiment": "occupation-forward",
            "n": 256,
            "paths": 500,
            "seed": 1,
            "interval": "(-0.4,-0.1]",
            "alpha": 0.01,
            "format": "csv",
            "workers": 2,
        }
    )
    service.validate({"experiment": "x", "interval": [-1.0, 0.0, True]})


@pytest.mark.parametrize(
    "document",
    [
        {},
        {"experiment": "x", "n": 32},
        {"experiment": "x", "paths": 10},
        {"experiment": "x", "alpha": 0.5},
        {"experiment": "x", "format": "xml"},
        {"experiment": "x", "unknown": 1},
    ],
)
def test_config_schema_rejects(document):
    """Test that invalid configs fail validation."""
    with pytest.raises(ValidationFailedError):
        ValidationService.for_config().validate(document)


def test_report_schema_accepts_report_dicts():
    """Test that TestReport.to_dict matches the report schema."""
    report = TestReport(
        name="nu-uniformity", statistic=0.01, p_value=0.5, n_samples=(100, 0), passed=True
    )

    ValidationService.for_report().validate(report.to_dict())


def test_load_document(tmp_path):
    """Test reading and validating a config file."""
    path = tmp_path / "config.json"
    path.write_text(json.dumps({"experiment": "vervaat-limit", "n": 128}))

    document = ValidationService.for_config().load_document(path)

    assert document["n"] == 128


def test_load_document_errors(tmp_path):
    """Test missing and malformed files."""
    service = ValidationService.for_config()
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")

    with pytest.raises(ArtifactIOError):
        service.load_document(tmp_path / "missing.json")
    with pytest.raises(ArtifactIOError):
        service.load_document(broken)
    with pytest.raises(ArtifactIOError):
        load_schema(tmp_path / "missing.json")


def test_schemas_ship_with_the_package():
    """Test that both schemas are read from the installed package."""
    for name in (CONFIG_SCHEMA, REPORT_SCHEMA):
        assert schema_file(name).is_file()
        assert load_schema(schema_file(name))["type"] == "object"


def test_schema_dir_overrides_the_bundled_schemas(tmp_path):
    """Test that a schema_dir setting replaces the packaged config schema."""
    (tmp_path / CONFIG_SCHEMA).write_text(json.dumps({"type": "object", "required": ["n"]}))

    service = ValidationService.for_config(tmp_path)

    service.validate({"n": 1})
    with pytest.raises(ValidationFailedError):
        service.validate({"experiment": "vervaat-limit"})
    with pytest.raises(ArtifactIOError):
        ValidationService.for_report(tmp_path)
