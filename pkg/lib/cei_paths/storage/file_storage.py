"""File system storage implementation."""

import csv
import io
import json
import os
from collections.abc import Callable, Sequence
from pathlib import Path
from typing import TextIO

import numpy as np

from cei_paths.domain.errors import ArtifactIOError
from cei_paths.domain.experiment_config import OutputFormat
from cei_paths.domain.grid_path import GridPath
from cei_paths.domain.test_report import TestReport
from cei_paths.storage.storage_interface import ArtifactStorage


def _as_rows(paths: Sequence[GridPath] | np.ndarray) -> np.ndarray:
    if isinstance(paths, np.ndarray):
        rows = np.atleast_2d(paths)
    else:
        rows = np.array([path.values for path in paths])
    if rows.size == 0:
        raise ValueError("no paths to write")
    return rows


def _write_atomic(target: Path, write: Callable[[TextIO], None]) -> None:
    """Write through a temp file, fsync, then replace the target."""
    tmp_file = target.with_name(target.name + ".tmp")
    try:
        with open(tmp_file, "w", newline="") as f:
            write(f)
            f.flush()
            # data must reach disk before the rename
            os.fsync(f.fileno())
        tmp_file.replace(target)
    except OSError as e:
        if tmp_file.exists():
            tmp_file.unlink()
        raise ArtifactIOError(str(target), str(e)) from e


def _write_csv(rows: np.ndarray, seed: int, f: TextIO) -> None:
    n = rows.shape[1] - 1
    f.write(f"# n={n} master_seed={seed}\n")
    writer = csv.writer(f)
    writer.writerow([f"t_{k}" for k in range(n + 1)])
    for row in rows:
        writer.writerow([repr(float(value)) for value in row])


def _write_json(rows: np.ndarray, seed: int, f: TextIO) -> None:
    document = {
        "n": rows.shape[1] - 1,
        "master_seed": seed,
        "paths": rows.tolist(),
    }
    json.dump(document, f)


def emit_samples(
    paths: Sequence[GridPath] | np.ndarray,
    fmt: OutputFormat,
    destination: Path,
    seed: int = 0,
) -> Path:
    """Write paths as CSV (one row per path, columns t_0..t_n) or JSON.

    The CSV starts with a `# n=<n> master_seed=<seed>` comment line; the JSON object
    carries the same header fields next to the path list. Values are written
    with repr, so reading them back is exact.

    Raises:
        ArtifactIOError: If the file cannot be written
    """
    rows = _as_rows(paths)
    destination = Path(destination)
    destination.parent.mkdir(parents=True, exist_ok=True)
    match OutputFormat(fmt):
        case OutputFormat.CSV:
            _write_atomic(destination, lambda f: _write_csv(rows, seed, f))
        case OutputFormat.JSON:
            _write_atomic(destination, lambda f: _write_json(rows, seed, f))
    return destination


def _parse_header(line: str) -> dict:
    header = {}
    for field in line.lstrip("#").split():
        key, _, value = field.partition("=")
        header[key] = int(value)
    return header


def load_samples(source: Path) -> tuple[list[GridPath], dict]:
    """Read a samples file written by emit_samples (format from the suffix).

    Raises:
        ArtifactIOError: If the file is missing or malformed
    """
    source = Path(source)
    try:
        text = source.read_text()
    except OSError as e:
        raise ArtifactIOError(str(source), str(e)) from e

    try:
        if source.suffix == ".csv":
            lines = text.splitlines()
            header = _parse_header(lines[0]) if lines and lines[0].startswith("#") else {}
            body = [line for line in lines if not line.startswith("#")]
            reader = csv.reader(io.StringIO("\n".join(body[1:])))
            paths = [GridPath([float(value) for value in row]) for row in reader if row]
        else:
            document = json.loads(text)
            header = {key: value for key, value in document.items() if key != "paths"}
            paths = [GridPath(row) for row in document["paths"]]
    except (ValueError, KeyError, IndexError) as e:
        raise ArtifactIOError(str(source), f"malformed samples file: {e}") from e
    return paths, header


class FileSystemStorage(ArtifactStorage):
    """Artifacts of each run as files under one directory, written atomically."""

    def __init__(self, base_path: Path):
        """Initialize file system storage.

        Args:
            base_path: Directory receiving the artifacts
        """
        self.base_path = Path(base_path)
        self.base_path.mkdir(parents=True, exist_ok=True)

    def samples_path(self, name: str, fmt: OutputFormat) -> Path:
        return self.base_path / f"{name}.samples.{OutputFormat(fmt).value}"

    def report_path(self, name: str) -> Path:
        return self.base_path / f"{name}.report.json"

    def metadata_path(self, name: str) -> Path:
        return self.base_path / f"{name}.meta.json"

    def write_samples(
        self,
        name: str,
        paths: Sequence[GridPath] | np.ndarray,
        fmt: OutputFormat,
        seed: int,
    ) -> Path:
        return emit_samples(paths, fmt, self.samples_path(name, fmt), seed)

    def read_samples(self, name: str, fmt: OutputFormat) -> tuple[list[GridPath], dict]:
        return load_samples(self.samples_path(name, fmt))

    def write_report(self, name: str, report: TestReport) -> Path:
        """Write the report with sorted keys so identical runs give identical files."""
        target = self.report_path(name)
        _write_atomic(target, lambda f: json.dump(report.to_dict(), f, indent=2, sort_keys=True))
        return target

    def read_report(self, name: str) -> TestReport:
        target = self.report_path(name)
        if not target.exists():
            raise ArtifactIOError(str(target), "report not found")
        with open(target) as f:
            return TestReport.from_dict(json.load(f))

    def write_metadata(self, name: str, metadata: dict) -> Path:
        target = self.metadata_path(name)
        _write_atomic(target, lambda f: json.dump(metadata, f, indent=2))
        return target

    def read_metadata(self, name: str) -> dict | None:
        target = self.metadata_path(name)
        if not target.exists():
            return None
        with open(target) as f:
            return json.load(f)
