"""
Enumeration service - exact laws of discrete cyclically exchangeable walks

A walk built from a uniformly permuted increment multiset is exactly CEI on
its grid, so the random-shift conditioning can be checked as an identity
between finite distributions. Probabilities are exact Fractions.
"""

import itertools
from collections import defaultdict
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from cei_paths.domain.grid_path import GridPath
from cei_paths.domain.interval import Interval
from cei_paths.utils.path_functionals import cyclic_shift, shifted_min_profile

PathKey = tuple[float, ...]
Law = dict[PathKey, Fraction]

MAX_ENUMERATION_SIZE = 10


@dataclass(frozen=True)
class TransformLaw:
    """Joint law of (nu, shifted path) on the conditioning event, plus marginals."""

    paths: Law
    nu: dict[int, Fraction]
    joint: dict[tuple[int, PathKey], Fraction]
    event_probability: Fraction


def _key(path: GridPath) -> PathKey:
    return tuple(path.to_list())


def enumerate_walk_law(increments: Sequence[float]) -> Law:
    """Exact law of the walk whose increments are a uniform ordering of the multiset.

    Every distinct ordering is equally likely.
    """
    if len(increments) > MAX_ENUMERATION_SIZE:
        raise ValueError(
            f"exhaustive enumeration is limited to {MAX_ENUMERATION_SIZE} increments"
        )
    orderings = set(itertools.permutations(increments))
    weight = Fraction(1, len(orderings))
    law: Law = {}
    for ordering in sorted(orderings):
        path = GridPath(np.concatenate(([0.0], np.cumsum(ordering))))
        law[_key(path)] = law.get(_key(path), Fraction(0)) + weight
    return law


def _occupied_cells(key: PathKey, interval: Interval) -> np.ndarray:
    return np.flatnonzero(interval.contains(shifted_min_profile(GridPath(key))))


def _normalised(law: dict, mass: Fraction) -> dict:
    return {key: value / mass for key, value in law.items()}


def conditioned_law(law: Law, interval: Interval) -> Law:
    """Law of the walk conditioned on {min in I}."""
    kept = {key: p for key, p in law.items() if interval.contains(min(key))}
    mass = sum(kept.values(), Fraction(0))
    if mass == 0:
        raise ValueError(f"the walk never has its minimum in {interval}")
    return _normalised(kept, mass)


def event_law(law: Law, interval: Interval) -> Law:
    """Law of the walk conditioned on {A_1^I > 0} (some shift has its minimum in I)."""
    kept = {key: p for key, p in law.items() if _occupied_cells(key, interval).size}
    mass = sum(kept.values(), Fraction(0))
    if mass == 0:
        raise ValueError(f"no shift of the walk has its minimum in {interval}")
    return _normalised(kept, mass)


def size_biased_law(law: Law, interval: Interval) -> Law:
    """Law of the walk reweighted by its occupation time A_1^I = count / n.

    The occupation-time shift maps this law, not the law given {A_1^I > 0},
    onto the law conditioned on {min in I}. Both coincide when every path of
    the event occupies the same number of cells.
    """
    weighted = {}
    for key, p in law.items():
        count = _occupied_cells(key, interval).size
        if count:
            weighted[key] = p * count
    mass = sum(weighted.values(), Fraction(0))
    if mass == 0:
        raise ValueError(f"no shift of the walk has its minimum in {interval}")
    return _normalised(weighted, mass)


def transform_law(law: Law, interval: Interval) -> TransformLaw:
    """Exact law of the occupation-time shift, averaged over the uniform u.

    A uniform u selects each occupied cell with probability 1/count, so the
    enumeration weights every occupied cell of every path equally.
    """
    joint: dict[tuple[int, PathKey], Fraction] = defaultdict(Fraction)
    event_probability = Fraction(0)
    for key, p in law.items():
        path = GridPath(key)
        occupied = _occupied_cells(key, interval)
        if occupied.size == 0:
            continue
        event_probability += p
        share = p / occupied.size
        for nu in occupied:
            joint[(int(nu), _key(cyclic_shift(path, int(nu))))] += share

    joint = _normalised(joint, event_probability)
    paths: Law = defaultdict(Fraction)
    nu_law: dict[int, Fraction] = defaultdict(Fraction)
    for (nu, key), p in joint.items():
        paths[key] += p
        nu_law[nu] += p
    return TransformLaw(
        paths=dict(paths),
        nu=dict(nu_law),
        joint=dict(joint),
        event_probability=event_probability,
    )


def converse_law(law: Law, n: int) -> Law:
    """Law of the path shifted at an independent uniform cell in {0, ..., n-1}."""
    shifted: Law = defaultdict(Fraction)
    for key, p in law.items():
        path = GridPath(key)
        for j in range(n):
            shifted[_key(cyclic_shift(path, j))] += p / n
    return dict(shifted)


def uniform_cells(n: int) -> dict[int, Fraction]:
    return {j: Fraction(1, n) for j in range(n)}


def independence_gap(result: TransformLaw) -> Fraction:
    """Largest |P(nu, path) - P(nu) P(path)| over all pairs (0 means exact independence)."""
    gap = Fraction(0)
    for nu, p_nu in result.nu.items():
        for key, p_path in result.paths.items():
            gap = max(gap, abs(result.joint.get((nu, key), Fraction(0)) - p_nu * p_path))
    return gap
