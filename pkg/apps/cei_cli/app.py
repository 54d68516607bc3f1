"""Application object shared by the CLI commands."""

from cei_paths.config import SimulationSettings
from cei_paths.services.experiment_service import ExperimentService
from cei_paths.services.validation_service import ValidationService


class CEIApp:
    """Holds the settings and services a command needs."""

    def __init__(
        self,
        settings: SimulationSettings | None = None,
        experiment_service: ExperimentService | None = None,
    ):
        """
        Initialize the app.

        Args:
            settings: Process-wide defaults (read from CEI_* variables if omitted)
            experiment_service: Service running registered experiments (optional)
        """
        self.settings = settings or SimulationSettings()
        self.experiment_service = experiment_service or ExperimentService(self.settings)
        self.name = "cei"

    def config_validator(self) -> ValidationService:
        return ValidationService.for_config(self.settings.schema_dir)
