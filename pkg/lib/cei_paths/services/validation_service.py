"""Schema validation for experiment config files and test reports."""

import json
from importlib import resources
from importlib.resources.abc import Traversable
from pathlib import Path

from jsonschema import Draft202012Validator, ValidationError

from cei_paths.domain.errors import ArtifactIOError, ValidationFailedError

# Shipped as package data; settings.schema_dir points elsewhere when set.
SCHEMA_DIR = resources.files("cei_paths") / "schemas"
CONFIG_SCHEMA = "experiment_config.json"
REPORT_SCHEMA = "test_report.json"

SchemaSource = Path | Traversable


def _read_json(path: SchemaSource | str) -> dict:
    source = Path(path) if isinstance(path, str) else path
    try:
        return json.loads(source.read_text())
    except (OSError, ValueError) as e:
        raise ArtifactIOError(str(source), str(e)) from e


def schema_file(name: str, schema_dir: Path | None = None) -> SchemaSource:
    """Locate a bundled schema, or its override under schema_dir."""
    return (SCHEMA_DIR if schema_dir is None else Path(schema_dir)) / name


def load_schema(path: SchemaSource) -> dict:
    """Read a JSON Schema from disk or from the installed package.

    Raises:
        ArtifactIOError: If the schema is missing or not valid JSON
    """
    return _read_json(path)


class ValidationService:
    """Checks config and report documents against one of the bundled schemas."""

    def __init__(self, schema: dict):
        self.schema = schema
        self._validator = Draft202012Validator(schema)

    @classmethod
    def for_config(cls, schema_dir: Path | None = None) -> "ValidationService":
        return cls(load_schema(schema_file(CONFIG_SCHEMA, schema_dir)))

    @classmethod
    def for_report(cls, schema_dir: Path | None = None) -> "ValidationService":
        return cls(load_schema(schema_file(REPORT_SCHEMA, schema_dir)))

    def validate(self, document: dict) -> None:
        """Collect every violation of the schema in document.

        Raises:
            ValidationFailedError: Carrying one entry per violation, ordered by path
        """
        errors = sorted(
            self._validator.iter_errors(document), key=lambda e: [str(part) for part in e.path]
        )
        if errors:
            raise ValidationFailedError([self._format_error(error) for error in errors])

    def _format_error(self, error: ValidationError) -> dict:
        return {
            "message": error.message,
            "path": list(error.absolute_path),
            "validator": error.validator,
            "validator_value": error.validator_value,
        }

    def load_document(self, path: Path) -> dict:
        """Read a JSON file and validate it.

        Raises:
            ArtifactIOError: If the file cannot be read or parsed
            ValidationFailedError: If it does not match the schema
        """
        document = _read_json(path)
        self.validate(document)
        return document
