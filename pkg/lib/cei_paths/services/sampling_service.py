"""
Sampling service - seeded generation of every process law the toolkit uses

Each law has a batch sampler returning a (paths, n+1) array and a single-path
sampler returning a GridPath. Samplers accept an RngStream (fresh, reproducible
generator) or a live numpy Generator.
"""

import logging
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from cei_paths.domain.errors import (
    MaxAttemptsExceededError,
    NegativeEndpointError,
    TooShortError,
)
from cei_paths.domain.grid_path import GridPath
from cei_paths.domain.interval import Interval
from cei_paths.domain.process_spec import EIParams, ProcessKind, ProcessSpec
from cei_paths.domain.rng_stream import RandomSource, as_generator

logger = logging.getLogger(__name__)

PathPredicate = Callable[[np.ndarray], np.ndarray]

DEFAULT_MAX_ATTEMPTS = 1_000_000

# Upper bound on floats held by one rejection chunk (~128 MB).
MAX_CHUNK_CELLS = 2**24


def _check_resolution(n: int) -> None:
    if n < 2:
        raise TooShortError(n + 1)


def _grid_times(n: int) -> np.ndarray:
    return np.arange(n + 1) / n


def _cumulate(increments: np.ndarray) -> np.ndarray:
    paths = np.zeros(increments.shape[:-1] + (increments.shape[-1] + 1,))
    np.cumsum(increments, axis=-1, out=paths[..., 1:])
    return paths


# --- Brownian family -------------------------------------------------------


def sample_brownian_motion_batch(n: int, paths: int, rng: RandomSource) -> np.ndarray:
    """Brownian motion on the grid: cumulative N(0, 1/n) increments."""
    _check_resolution(n)
    generator = as_generator(rng)
    return _cumulate(generator.normal(0.0, np.sqrt(1.0 / n), size=(paths, n)))


def sample_brownian_motion(n: int, rng: RandomSource) -> GridPath:
    """Single Brownian motion path with values[0] = 0 and Var(values[k]) = k/n."""
    return GridPath(sample_brownian_motion_batch(n, 1, rng)[0])


def sample_brownian_bridge_batch(
    n: int, paths: int, x: float, rng: RandomSource
) -> np.ndarray:
    """Brownian bridges to x built as W_t - t(W_1 - x), endpoint pinned bit-exactly."""
    motion = sample_brownian_motion_batch(n, paths, rng)
    bridges = motion - np.outer(motion[:, -1] - x, _grid_times(n))
    bridges[:, -1] = x
    return bridges


def sample_brownian_bridge(n: int, x: float, rng: RandomSource) -> GridPath:
    """Single Brownian bridge from 0 to x."""
    return GridPath(sample_brownian_bridge_batch(n, 1, x, rng)[0])


def sample_signed_bm_batch(n: int, paths: int, rng: RandomSource) -> np.ndarray:
    """Brownian motion multiplied by the sign of its endpoint (law of B given B_1 > 0)."""
    generator = as_generator(rng)
    motion = sample_brownian_motion_batch(n, paths, generator)
    # an endpoint of exactly 0 has no sign; redraw those rows
    flat = motion[:, -1] == 0.0
    while flat.any():
        motion[flat] = sample_brownian_motion_batch(n, int(flat.sum()), generator)
        flat = motion[:, -1] == 0.0
    return motion * np.sign(motion[:, -1])[:, None]


def sample_signed_bm(n: int, rng: RandomSource) -> GridPath:
    return GridPath(sample_signed_bm_batch(n, 1, rng)[0])


# --- Exchangeable increments -------------------------------------------------


def sample_ei_process_batch(
    n: int,
    paths: int,
    params: EIParams,
    rng: RandomSource,
    x_end: float | None = None,
) -> np.ndarray:
    """Finite-jump EI processes in canonical form.

    values[k] = alpha*k/n + sigma*b[k] + sum_i beta_i (1{ceil(U_i n) <= k} - k/n)

    Jumps take effect at the first grid time at or after U_i. When x_end is
    given it replaces alpha, pinning the endpoint at x_end.
    """
    _check_resolution(n)
    generator = as_generator(rng)
    alpha = params.alpha if x_end is None else x_end
    times = _grid_times(n)

    values = np.tile(alpha * times, (paths, 1))
    if params.sigma > 0:
        values += params.sigma * sample_brownian_bridge_batch(n, paths, 0.0, generator)

    if params.betas:
        uniforms = generator.random((paths, len(params.betas)))
        jump_index = np.clip(np.ceil(uniforms * n), 1, n).astype(int)
        grid = np.arange(n + 1)
        for i, beta in enumerate(params.betas):
            values += beta * ((grid >= jump_index[:, i, None]) - times)

    values[:, 0] = 0.0
    values[:, -1] = alpha
    return values


def sample_ei_process(
    n: int, params: EIParams, rng: RandomSource, x_end: float | None = None
) -> GridPath:
    """Single EI path; use alpha = 0 for a 0-to-0 CEI bridge."""
    return GridPath(sample_ei_process_batch(n, 1, params, rng, x_end=x_end)[0])


# --- Bessel-3 -----------------------------------------------------------------


def sample_bessel3_process_batch(n: int, paths: int, rng: RandomSource) -> np.ndarray:
    """Euclidean norm of three independent Brownian motions."""
    _check_resolution(n)
    generator = as_generator(rng)
    coordinates = _cumulate(generator.normal(0.0, np.sqrt(1.0 / n), size=(paths, 3, n)))
    return np.linalg.norm(coordinates, axis=1)


def sample_bessel3_process(n: int, rng: RandomSource) -> GridPath:
    return GridPath(sample_bessel3_process_batch(n, 1, rng)[0])


def sample_bessel3_bridge_batch(
    n: int, paths: int, x: float, rng: RandomSource
) -> np.ndarray:
    """Norm of a 3-d Brownian bridge from the origin to (x, 0, 0)."""
    if x < 0:
        raise NegativeEndpointError(x)
    _check_resolution(n)
    generator = as_generator(rng)
    coordinates = _cumulate(generator.normal(0.0, np.sqrt(1.0 / n), size=(paths, 3, n)))
    target = np.array([x, 0.0, 0.0])
    drift = (coordinates[:, :, -1] - target)[:, :, None] * _grid_times(n)
    bridges = np.linalg.norm(coordinates - drift, axis=1)
    bridges[:, 0] = 0.0
    bridges[:, -1] = x
    return bridges


def sample_bessel3_bridge(n: int, x: float, rng: RandomSource) -> GridPath:
    return GridPath(sample_bessel3_bridge_batch(n, 1, x, rng)[0])


# --- Discrete walk ------------------------------------------------------------


def sample_discrete_cei_walk_batch(
    increments: tuple[float, ...] | list[float], paths: int, rng: RandomSource
) -> np.ndarray:
    """Uniform random orderings of a fixed increment multiset, cumulatively summed."""
    if len(increments) < 2:
        raise TooShortError(len(increments) + 1)
    generator = as_generator(rng)
    multiset = np.asarray(increments, dtype=float)
    orderings = generator.permuted(np.tile(multiset, (paths, 1)), axis=1)
    return _cumulate(orderings)


def sample_discrete_cei_walk(
    increments: tuple[float, ...] | list[float], rng: RandomSource
) -> GridPath:
    """An exactly exchangeable-increment walk used by the enumeration oracles."""
    return GridPath(sample_discrete_cei_walk_batch(increments, 1, rng)[0])


# --- Dispatch -----------------------------------------------------------------


def sample_batch(spec: ProcessSpec, n: int, paths: int, rng: RandomSource) -> np.ndarray:
    """Draw `paths` samples of the law described by spec.

    For the discrete walk n is ignored: the grid has one cell per increment.
    """
    match spec.kind:
        case ProcessKind.BRIDGE:
            return sample_brownian_bridge_batch(n, paths, spec.x, rng)
        case ProcessKind.BM:
            return sample_brownian_motion_batch(n, paths, rng)
        case ProcessKind.EI:
            return sample_ei_process_batch(n, paths, spec.ei, rng)
        case ProcessKind.BESSEL3:
            return sample_bessel3_process_batch(n, paths, rng)
        case ProcessKind.BESSEL3_BRIDGE:
            return sample_bessel3_bridge_batch(n, paths, spec.x, rng)
        case ProcessKind.SIGNED_BM:
            return sample_signed_bm_batch(n, paths, rng)
        case ProcessKind.WALK:
            return sample_discrete_cei_walk_batch(spec.increments, paths, rng)
    raise ValueError(f"Unsupported process kind: {spec.kind}")


def sample_process(spec: ProcessSpec, n: int, rng: RandomSource) -> GridPath:
    return GridPath(sample_batch(spec, n, 1, rng)[0])


# --- Rejection oracles -------------------------------------------------------


def min_at_least(epsilon: float) -> PathPredicate:
    """Predicate {min >= -epsilon}."""
    return lambda batch: batch.min(axis=1) >= -epsilon


def min_in(interval: Interval) -> PathPredicate:
    """Predicate {min in I}."""
    return lambda batch: interval.contains(batch.min(axis=1))


@dataclass(frozen=True)
class RejectionResult:
    """Accepted paths plus the bookkeeping needed for reports."""

    paths: np.ndarray
    attempts: int

    @property
    def acceptance_rate(self) -> float:
        return self.paths.shape[0] / self.attempts if self.attempts else 0.0


def rejection_sample_batch(
    spec: ProcessSpec,
    n: int,
    paths: int,
    predicate: PathPredicate,
    rng: RandomSource,
    max_attempts: int = DEFAULT_MAX_ATTEMPTS,
) -> RejectionResult:
    """Draw from spec until `paths` samples satisfy predicate.

    Candidates are drawn in chunks sized from the running acceptance rate;
    accepted paths keep their draw order.

    Raises:
        MaxAttemptsExceededError: If max_attempts consecutive candidates are rejected
    """
    if max_attempts < 1:
        raise ValueError(f"max_attempts must be >= 1, got {max_attempts}")
    generator = as_generator(rng)
    chunk_cap = max(1, min(MAX_CHUNK_CELLS // (n + 1), max_attempts))

    accepted: list[np.ndarray] = []
    n_accepted = 0
    attempts = 0
    since_last = 0
    chunk = min(256, chunk_cap)

    while n_accepted < paths:
        candidates = sample_batch(spec, n, chunk, generator)
        mask = np.asarray(predicate(candidates), dtype=bool)
        hits = np.flatnonzero(mask)
        attempts += chunk

        if hits.size:
            since_last = chunk - 1 - int(hits[-1])
            keep = candidates[hits[: paths - n_accepted]]
            accepted.append(keep)
            n_accepted += keep.shape[0]
        else:
            since_last += chunk
            if since_last >= max_attempts:
                raise MaxAttemptsExceededError(since_last, n_accepted)

        rate = max(n_accepted, 1) / attempts
        chunk = int(min(max(1.2 * (paths - n_accepted) / rate, 64), chunk_cap))
        logger.debug(
            "rejection %s: %d/%d accepted after %d attempts", spec.kind, n_accepted, paths, attempts
        )

    result = RejectionResult(paths=np.concatenate(accepted), attempts=attempts)
    logger.info(
        "rejection sampling %s (n=%d): acceptance rate %.5f over %d attempts",
        spec.kind,
        n,
        result.acceptance_rate,
        attempts,
    )
    return result


def size_biased_sample_batch(
    spec: ProcessSpec,
    n: int,
    paths: int,
    weight: Callable[[np.ndarray], np.ndarray],
    rng: RandomSource,
    max_attempts: int = DEFAULT_MAX_ATTEMPTS,
) -> RejectionResult:
    """Draw from spec reweighted by a weight in [0, 1], by thinning.

    A candidate is kept with probability weight(candidate), so accepted paths
    follow the base law biased by the weight.
    """
    generator = as_generator(rng)

    def thinning(batch: np.ndarray) -> np.ndarray:
        return generator.random(batch.shape[0]) < weight(batch)

    return rejection_sample_batch(spec, n, paths, thinning, generator, max_attempts)


def rejection_sample_conditioned_min(
    n: int,
    epsilon: float,
    base: ProcessSpec,
    rng: RandomSource,
    max_attempts: int = DEFAULT_MAX_ATTEMPTS,
) -> GridPath:
    """First path of the base law whose minimum is at least -epsilon.

    Raises:
        MaxAttemptsExceededError: If no candidate within max_attempts is accepted
    """
    if epsilon <= 0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    result = rejection_sample_batch(base, n, 1, min_at_least(epsilon), rng, max_attempts)
    return GridPath(result.paths[0])
