"""Storage interface for experiment artifacts."""

from abc import ABC, abstractmethod
from collections.abc import Sequence
from pathlib import Path

import numpy as np

from cei_paths.domain.experiment_config import OutputFormat
from cei_paths.domain.grid_path import GridPath
from cei_paths.domain.test_report import TestReport


class ArtifactStorage(ABC):
    """Abstract base class for artifact storage implementations."""

    @abstractmethod
    def write_samples(
        self,
        name: str,
        paths: Sequence[GridPath] | np.ndarray,
        fmt: OutputFormat,
        seed: int,
    ) -> Path:
        """Write sample paths of a run.

        Args:
            name: Run name (usually the experiment name)
            paths: Paths to write, one row per path
            fmt: csv or json
            seed: Master seed recorded in the header

        Returns:
            Location of the written file
        """
        pass

    @abstractmethod
    def read_samples(self, name: str, fmt: OutputFormat) -> tuple[list[GridPath], dict]:
        """Read sample paths and their header back.

        Raises:
            ArtifactIOError: If the file is missing or malformed
        """
        pass

    @abstractmethod
    def write_report(self, name: str, report: TestReport) -> Path:
        """Write the report of a run."""
        pass

    @abstractmethod
    def read_report(self, name: str) -> TestReport:
        """Read a report back.

        Raises:
            ArtifactIOError: If the report is missing or malformed
        """
        pass

    @abstractmethod
    def write_metadata(self, name: str, metadata: dict) -> Path:
        """Write run metadata (run id, timings, config echo)."""
        pass

    @abstractmethod
    def read_metadata(self, name: str) -> dict | None:
        """Read run metadata.

        Returns:
            Metadata dictionary or None if not found
        """
        pass
