"""Weighted empirical Lorenz curves and plug-in index estimators."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .curves import LorenzCurve, _unchecked
from .errors import (
    BadWeightError,
    DomainError,
    EmptySampleError,
    NegativeIncomeError,
    ZeroMeanError,
)
from .indices import (
    NormalizedIndex,
    RawIndex,
    index_raw,
    triangle_map_star,
    triangle_map_upper,
    Variant,
)

__all__ = [
    "WeightedSample",
    "weighted_sample",
    "weighted_mean",
    "empirical_lorenz",
    "plug_in_indices",
    "normalized_statistic",
]


@dataclass(frozen=True, eq=False)
class WeightedSample:
    """Non-negative incomes with strictly positive survey weights."""

    values: np.ndarray
    weights: np.ndarray

    @property
    def size(self) -> int:
        return len(self.values)


def weighted_sample(values, weights=None) -> WeightedSample:
    """Validate incomes and weights (default: unit weights)."""
    v = np.ascontiguousarray(values, dtype=float)
    if v.size == 0:
        raise EmptySampleError("sample has no observations")
    if np.any(v < 0.0):
        raise NegativeIncomeError("incomes must be >= 0")
    if weights is None:
        w = np.ones_like(v)
    else:
        w = np.ascontiguousarray(weights, dtype=float)
        if w.shape != v.shape:
            raise BadWeightError("weights must match values in length")
        if np.any(w <= 0.0):
            raise BadWeightError("weights must be > 0")
    if float(np.sum(w * v)) <= 0.0:
        raise ZeroMeanError("weighted mean income must be > 0")
    v.setflags(write=False)
    w.setflags(write=False)
    return WeightedSample(v, w)


def weighted_mean(s: WeightedSample) -> float:
    return float(np.sum(s.weights * s.values) / np.sum(s.weights))


def empirical_lorenz(s: WeightedSample) -> LorenzCurve:
    """Lorenz curve of the weighted empirical distribution.

    Sort by income and aggregate ties; knot i sits at the cumulative weight
    share with ordinate the cumulative income share.  The result is exactly
    the running integral of the left-continuous weighted quantile function,
    hence piecewise linear and convex by construction (slopes are the sorted
    incomes over the mean), so no validation pass is needed.  Rescaling all
    incomes or all weights by a positive constant leaves the curve unchanged.
    """
    vals, inverse = np.unique(s.values, return_inverse=True)
    w = np.bincount(inverse, weights=s.weights, minlength=len(vals))
    wv = w * vals
    ts = np.concatenate([[0.0], np.cumsum(w)]) / np.sum(w)
    ys = np.concatenate([[0.0], np.cumsum(wv)]) / np.sum(wv)
    ts[-1] = 1.0
    ys[-1] = 1.0
    return _unchecked(ts, ys)


def plug_in_indices(
    s1: WeightedSample, s2: WeightedSample
) -> tuple[RawIndex, NormalizedIndex, NormalizedIndex]:
    """Raw and both normalized indices of the two empirical curves."""
    raw = index_raw(empirical_lorenz(s1), empirical_lorenz(s2))
    star = NormalizedIndex(*triangle_map_star(raw.delta_x, raw.distance), Variant.STAR)
    upper = NormalizedIndex(
        *triangle_map_upper(raw.gini1, raw.gini2, raw.distance), Variant.UPPER
    )
    return raw, star, upper


def normalized_statistic(
    est: RawIndex, truth: RawIndex, n1: int, n2: int
) -> tuple[float, float]:
    """sqrt(n1 n2 / (n1 + n2)) times the estimation error, componentwise."""
    if n1 < 1 or n2 < 1:
        raise DomainError("sample sizes must be >= 1")
    rate = math.sqrt(n1 * n2 / (n1 + n2))
    return (
        rate * (est.delta_x - truth.delta_x),
        rate * (est.distance - truth.distance),
    )
