"""Error responses returned by the commands."""

import re

from pydantic import ValidationError

from cei_paths.domain.errors import CEIPathError, ValidationFailedError


def error_code(error: Exception) -> str:
    """Kebab-case code of an exception class.

    Examples:
        NoPassageError -> no-passage, ArtifactIOError -> artifact-io
    """
    name = type(error).__name__.removesuffix("Error")
    return re.sub(r"(?<=[a-z0-9])(?=[A-Z])|(?<=[A-Z])(?=[A-Z][a-z])", "-", name).lower()


def error_response(error: Exception) -> dict:
    """Dict describing a failed command."""
    if isinstance(error, ValidationFailedError):
        return {"error": "validation-failed", "message": str(error), "details": error.errors}
    if isinstance(error, ValidationError):
        return {
            "error": "invalid-arguments",
            "message": str(error),
            "details": [
                {"path": list(item["loc"]), "message": item["msg"]} for item in error.errors()
            ],
        }
    if isinstance(error, CEIPathError):
        return {"error": error_code(error), "message": str(error)}
    return {"error": "command-failed", "message": str(error)}
