"""Commands that list and run verification experiments."""

from pydantic import ValidationError

from cei_paths.domain.errors import CEIPathError
from cei_paths.domain.experiment_config import ExperimentConfig

from apps.cei_cli.app import CEIApp
from apps.cei_cli.errors import error_response


def list_experiments(app: CEIApp) -> dict:
    """
    List the experiment registry.

    Args:
        app: CEIApp instance

    Returns:
        dict with an "experiments" list of name / citation / description entries
    """
    return {
        "experiments": [
            {"name": name, "citation": citation, "description": description}
            for name, citation, description in app.experiment_service.list_experiments()
        ]
    }


def build_config(
    app: CEIApp, experiment: str | None, config_file: str | None, overrides: dict
) -> ExperimentConfig:
    """Merge settings defaults, an optional config file and flag overrides (flags win).

    Raises:
        ValidationFailedError: If the config file does not match its schema
        ValueError: If no experiment name is given
    """
    fields: dict = {}
    if config_file:
        fields.update(app.config_validator().load_document(config_file))
    fields.update({key: value for key, value in overrides.items() if value is not None})
    name = experiment or fields.pop("experiment", None)
    fields.pop("experiment", None)
    if not name:
        raise ValueError("an experiment name is required (argument or config file)")
    return ExperimentConfig.from_settings(name, app.settings, **fields)


def verify(
    app: CEIApp,
    experiment: str | None,
    config_file: str | None = None,
    **overrides,
) -> dict:
    """
    Run a registered experiment and return its report.

    Args:
        app: CEIApp instance
        experiment: Experiment name (may come from the config file instead)
        config_file: JSON config validated against the experiment_config.json schema
        **overrides: ExperimentConfig fields given as flags

    Returns:
        The TestReport as a dict plus the artifact directory, or an error dict
    """
    try:
        config = build_config(app, experiment, config_file, overrides)
        report = app.experiment_service.run_experiment(config)
    except (CEIPathError, ValidationError, ValueError) as e:
        return error_response(e)

    response = report.to_dict()
    response["out_dir"] = str(config.out_dir)
    return response
