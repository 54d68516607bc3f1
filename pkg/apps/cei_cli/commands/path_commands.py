"""Commands that sample paths and apply transforms to them."""

import logging
from pathlib import Path

import numpy as np
from pydantic import ValidationError

from cei_paths.domain.errors import CEIPathError
from cei_paths.domain.experiment_config import OutputFormat
from cei_paths.domain.grid_path import GridPath
from cei_paths.domain.interval import Interval
from cei_paths.domain.process_spec import EIParams, ProcessSpec
from cei_paths.domain.rng_stream import RngStream
from cei_paths.services.sampling_service import sample_batch
from cei_paths.services.transform_service import TransformOp, apply_transform
from cei_paths.storage.file_storage import emit_samples, load_samples

from apps.cei_cli.app import CEIApp
from apps.cei_cli.errors import error_response

logger = logging.getLogger(__name__)

# purpose codes of the streams a command reads
SAMPLE_PURPOSE = 1
UNIFORM_PURPOSE = 2


def build_process_spec(
    process: str,
    x: float = 0.0,
    alpha_drift: float = 0.0,
    sigma: float = 0.0,
    betas: tuple[float, ...] = (),
    increments: tuple[float, ...] = (),
) -> ProcessSpec:
    """ProcessSpec from the `cei sample` knobs (pydantic validates the combination)."""
    return ProcessSpec(
        kind=process,
        x=x,
        ei=EIParams(alpha=alpha_drift, sigma=sigma, betas=betas),
        increments=increments,
    )


def _output_format(app: CEIApp, out: str | None, fmt: str | None) -> OutputFormat:
    """Explicit --format, else the suffix of --out, else the settings default."""
    if fmt:
        return OutputFormat(fmt)
    suffix = Path(out).suffix.lstrip(".") if out else ""
    if suffix in (OutputFormat.CSV, OutputFormat.JSON):
        return OutputFormat(suffix)
    return OutputFormat(app.settings.format)


def _output_path(app: CEIApp, out: str | None, stem: str, fmt: OutputFormat) -> Path:
    if out:
        return Path(out)
    return Path(app.settings.out_dir) / f"{stem}.samples.{fmt.value}"


def sample_paths(
    app: CEIApp,
    process: str,
    n: int | None = None,
    paths: int | None = None,
    seed: int | None = None,
    x: float = 0.0,
    alpha_drift: float = 0.0,
    sigma: float = 0.0,
    betas: tuple[float, ...] = (),
    increments: tuple[float, ...] = (),
    out: str | None = None,
    fmt: str | None = None,
) -> dict:
    """
    Draw paths of a process law and write them to a samples file.

    Args:
        app: CEIApp instance
        process: Process kind (bridge, bm, ei, bessel3, bessel3-bridge, signed-bm, walk)
        n: Grid resolution (settings default when omitted)
        paths: Number of paths (settings emit_paths when omitted)
        seed: Master seed (settings default when omitted)
        x, alpha_drift, sigma, betas, increments: Law knobs
        out: Destination file (default <out_dir>/<process>.samples.<fmt>)
        fmt: csv or json (default: suffix of out, then settings)

    Returns:
        dict with the file, process, n, paths and seed
    """
    try:
        spec = build_process_spec(process, x, alpha_drift, sigma, betas, increments)
        n = n or app.settings.default_n
        paths = paths or app.settings.emit_paths
        seed = app.settings.seed if seed is None else seed
        output_format = _output_format(app, out, fmt)

        stream = RngStream(master_seed=seed).substream(SAMPLE_PURPOSE)
        batch = sample_batch(spec, n, paths, stream)
        destination = _output_path(app, out, spec.kind.value, output_format)
        emit_samples(batch, output_format, destination, seed)
        logger.info("wrote %d %s paths to %s", batch.shape[0], spec.kind, destination)

        return {
            "file": str(destination),
            "process": spec.kind.value,
            "n": batch.shape[1] - 1,
            "paths": batch.shape[0],
            "seed": seed,
        }
    except (CEIPathError, ValidationError, ValueError) as e:
        return error_response(e)


def transform_paths(
    app: CEIApp,
    op: str,
    input_file: str | None = None,
    process: str = "bridge",
    n: int | None = None,
    paths: int | None = None,
    seed: int | None = None,
    u: float | None = None,
    j: int | None = None,
    interval: str | None = None,
    y: float | None = None,
    epsilon: float | None = None,
    x: float | None = None,
    out: str | None = None,
    fmt: str | None = None,
) -> dict:
    """
    Apply a named transform to every path of a samples file (or to fresh paths).

    Without --u each path gets its own uniform from the seed.

    Args:
        app: CEIApp instance
        op: Transform name (shift, vervaat, condition-min, condition-min-value,
            first-passage, meander, bes3-to-bridge, reverse)
        input_file: Samples file to read; fresh paths of `process` otherwise
        u: Fixed uniform in [0, 1) for every path
        j, interval, y, epsilon, x: Transform knobs
        out: Destination file (default <out_dir>/<op>.samples.<fmt>)
        fmt: csv or json (default: suffix of out, then settings)

    Returns:
        dict with the file, counts of accepted and rejected paths and the shift indices
    """
    try:
        transform = TransformOp(op)
        seed = app.settings.seed if seed is None else seed
        output_format = _output_format(app, out, fmt)
        target = Interval.parse(interval) if interval else None

        if input_file:
            source, _ = load_samples(Path(input_file))
        else:
            spec = build_process_spec(process, x=x or 0.0)
            stream = RngStream(master_seed=seed).substream(SAMPLE_PURPOSE)
            batch = sample_batch(
                spec, n or app.settings.default_n, paths or app.settings.emit_paths, stream
            )
            source = [GridPath(values) for values in batch]

        if u is None:
            uniforms = RngStream(master_seed=seed).substream(UNIFORM_PURPOSE).generator()
            draws = uniforms.random(len(source))
        else:
            draws = np.full(len(source), u)

        results = [
            apply_transform(
                transform, path, float(draw), j=j, interval=target, y=y, epsilon=epsilon, x=x
            )
            for path, draw in zip(source, draws, strict=True)
        ]
        accepted = [result for result in results if result.conditioning_event]

        response = {
            "op": transform.value,
            "accepted": len(accepted),
            "rejected": len(results) - len(accepted),
            "nu": [result.nu_index for result in accepted],
            "seed": seed,
        }
        if accepted:
            destination = _output_path(app, out, transform.value, output_format)
            emit_samples([result.path for result in accepted], output_format, destination, seed)
            response["file"] = str(destination)
        return response
    except (CEIPathError, ValidationError, ValueError) as e:
        return error_response(e)
