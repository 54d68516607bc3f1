"""
Statistics service - turns distributional identities into pass/fail reports

Kolmogorov-Smirnov tests, a chi-square independence test, moment checks and
exact comparison of finite distributions. All functions are deterministic
in their inputs.
"""

from collections.abc import Hashable, Mapping, Sequence
from fractions import Fraction

import numpy as np
from scipy import stats

from cei_paths.domain.errors import (
    EmptySampleError,
    LengthMismatchError,
    OutOfRangeError,
    TooFewSamplesError,
    UnnormalizedError,
)
from cei_paths.domain.test_report import TestReport

DEFAULT_ALPHA = 0.001

# Asymptotic two-sample KS constant c(alpha) at alpha = 0.05.
KS_NOISE_CONSTANT = 1.36

Probability = float | Fraction


def _as_sample(values: Sequence[float] | np.ndarray, which: str) -> np.ndarray:
    sample = np.asarray(values, dtype=float).ravel()
    if sample.size == 0:
        raise EmptySampleError(which)
    return sample


def ks_two_sample(
    a: Sequence[float] | np.ndarray,
    b: Sequence[float] | np.ndarray,
    alpha: float = DEFAULT_ALPHA,
    name: str = "ks-two-sample",
    seed: int = 0,
) -> TestReport:
    """Two-sample Kolmogorov-Smirnov test with the asymptotic p-value.

    Raises:
        EmptySampleError: If either sample is empty
    """
    left = _as_sample(a, "a")
    right = _as_sample(b, "b")
    result = stats.ks_2samp(left, right, method="asymp")
    p_value = float(np.clip(result.pvalue, 0.0, 1.0))
    return TestReport(
        name=name,
        statistic=float(result.statistic),
        p_value=p_value,
        n_samples=(left.size, right.size),
        seed=seed,
        passed=p_value > alpha,
        details={"alpha": alpha},
    )


def ks_noise_floor(size_a: int, size_b: int) -> float:
    """Typical KS distance between two same-law samples of the given sizes."""
    return KS_NOISE_CONSTANT * float(np.sqrt((size_a + size_b) / (size_a * size_b)))


def ks_uniform(
    a: Sequence[float] | np.ndarray,
    alpha: float = DEFAULT_ALPHA,
    name: str = "ks-uniform",
    seed: int = 0,
) -> TestReport:
    """One-sample Kolmogorov-Smirnov test against Uniform[0, 1].

    Raises:
        EmptySampleError: If the sample is empty
        OutOfRangeError: If any value lies outside [0, 1]
    """
    sample = _as_sample(a, "a")
    low, high = float(sample.min()), float(sample.max())
    if low < 0.0 or high > 1.0:
        raise OutOfRangeError(low, high)
    result = stats.kstest(sample, "uniform", method="asymp")
    p_value = float(np.clip(result.pvalue, 0.0, 1.0))
    return TestReport(
        name=name,
        statistic=float(result.statistic),
        p_value=p_value,
        n_samples=(sample.size, 0),
        seed=seed,
        passed=p_value > alpha,
        details={"alpha": alpha},
    )


def _quantile_bins(sample: np.ndarray, bins: int) -> np.ndarray:
    edges = np.quantile(sample, np.linspace(0.0, 1.0, bins + 1)[1:-1])
    return np.searchsorted(edges, sample, side="right")


def chi2_independence(
    a: Sequence[float] | np.ndarray,
    b: Sequence[float] | np.ndarray,
    bins: int = 5,
    alpha: float = DEFAULT_ALPHA,
    name: str = "chi2-independence",
    seed: int = 0,
) -> TestReport:
    """Chi-square test of independence on empirical-quantile bins.

    Both samples are cut into `bins` equiprobable bins; bins left empty by ties
    are dropped, which lowers the degrees of freedom accordingly.

    Raises:
        LengthMismatchError: If the samples differ in length
        TooFewSamplesError: If fewer than 10 * bins**2 pairs are given
    """
    left = _as_sample(a, "a")
    right = _as_sample(b, "b")
    if left.size != right.size:
        raise LengthMismatchError(left.size, right.size)
    required = 10 * bins**2
    if left.size < required:
        raise TooFewSamplesError(required, left.size)

    table = np.zeros((bins, bins))
    np.add.at(table, (_quantile_bins(left, bins), _quantile_bins(right, bins)), 1)
    table = table[table.sum(axis=1) > 0][:, table.sum(axis=0) > 0]

    if min(table.shape) < 2:
        statistic, p_value, dof = 0.0, 1.0, 0
    else:
        result = stats.chi2_contingency(table, correction=False)
        statistic, p_value, dof = float(result.statistic), float(result.pvalue), int(result.dof)

    return TestReport(
        name=name,
        statistic=statistic,
        p_value=p_value,
        n_samples=(left.size, right.size),
        seed=seed,
        passed=p_value > alpha,
        details={"alpha": alpha, "dof": float(dof)},
    )


def exact_distribution_compare(
    d1: Mapping[Hashable, Probability],
    d2: Mapping[Hashable, Probability],
    tol: float = 1e-12,
    name: str = "exact-distribution",
    seed: int = 0,
) -> TestReport:
    """Total-variation comparison of two finite distributions.

    Exact Fractions stay exact until the final distance is reported.

    Raises:
        UnnormalizedError: If either map does not sum to 1 within tol
    """
    for dist in (d1, d2):
        total = sum(dist.values(), Fraction(0)) if dist else 0
        if abs(float(total) - 1.0) > tol:
            raise UnnormalizedError(float(total))

    support = set(d1) | set(d2)
    distance = sum((abs(d1.get(key, 0) - d2.get(key, 0)) for key in support), Fraction(0)) / 2
    distance = float(distance)
    within = distance <= tol
    return TestReport(
        name=name,
        statistic=distance,
        exact_pass=within,
        n_samples=(len(d1), len(d2)),
        seed=seed,
        passed=within,
        details={"tv_distance": distance, "tol": tol},
    )


def moment_check(
    a: Sequence[float] | np.ndarray,
    target_mean: float,
    target_var: float,
    k_sigma: float = 4.0,
    name: str = "moment-check",
    seed: int = 0,
) -> TestReport:
    """Check sample mean and variance against targets within k_sigma standard errors.

    The variance standard error uses the normal approximation
    sqrt((m4 - s^4) / n) with the sample fourth central moment m4.

    Raises:
        TooFewSamplesError: If fewer than 30 values are given
    """
    sample = _as_sample(a, "a")
    size = sample.size
    if size < 30:
        raise TooFewSamplesError(30, size)

    mean = float(sample.mean())
    variance = float(sample.var(ddof=1))
    fourth = float(np.mean((sample - mean) ** 4))

    z_mean = _z_score(mean - target_mean, np.sqrt(variance / size))
    z_var = _z_score(variance - target_var, np.sqrt(max(fourth - variance**2, 0.0) / size))
    worst = max(abs(z_mean), abs(z_var))

    return TestReport(
        name=name,
        statistic=worst,
        p_value=float(min(1.0, 2.0 * stats.norm.sf(worst))),
        n_samples=(size, 0),
        seed=seed,
        passed=worst <= k_sigma,
        details={
            "mean": mean,
            "variance": variance,
            "z_mean": z_mean,
            "z_variance": z_var,
            "k_sigma": k_sigma,
        },
    )


def _z_score(deviation: float, standard_error: float) -> float:
    if standard_error > 0:
        return float(deviation / standard_error)
    return 0.0 if deviation == 0 else float(np.inf)


def sample_correlation(a: Sequence[float] | np.ndarray, b: Sequence[float] | np.ndarray) -> float:
    """Pearson correlation of paired samples (0 when either is constant)."""
    left = _as_sample(a, "a")
    right = _as_sample(b, "b")
    if left.size != right.size:
        raise LengthMismatchError(left.size, right.size)
    if left.std() == 0 or right.std() == 0:
        return 0.0
    return float(np.corrcoef(left, right)[0, 1])
