"""Simulation of the limit law of the normalized index estimator.

The normalized estimation error of the (gap, distance) index converges to

    I = 2 ( integral of L,  directional-derivative of the L1 norm at the
            curve difference, applied to L ),

where L is a weighted difference of two Gaussian processes, one per
population, each driven by a Brownian bridge through the curve's second
derivative.  Everything here works on a common uniform grid whose size is a
power of two; draws are reproducible through seed splitting.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

from . import gb2
from .curves import gini, lorenz_distance
from .empirical import empirical_lorenz, normalized_statistic
from .errors import (
    DegenerateError,
    DomainError,
    GridMismatchError,
    IntegrabilityError,
    TooFewDrawsError,
)
from .indices import RawIndex, Variant, index_raw
from .indices import triangle_map_star as _star_map
from .indices import triangle_map_upper as _upper_map
from .extremal import max_distance, max_distance_for_gap

__all__ = [
    "GridPath",
    "LimitDraw",
    "brownian_bridge",
    "lorenz_limit_process",
    "combine_processes",
    "l1_directional_derivative",
    "limit_draw",
    "limit_draws",
    "monte_carlo_estimator",
    "normality_diagnostics",
    "normalized_limit_draws",
]

DEFAULT_GRID = 4096
DEFAULT_ZERO_TOL = 1e-9


def _as_seedseq(seed) -> np.random.SeedSequence:
    if isinstance(seed, np.random.SeedSequence):
        return seed
    return np.random.SeedSequence(seed)


@dataclass(frozen=True, eq=False)
class GridPath:
    """Real values on the uniform grid 0, 1/m, ..., 1 with m a power of two."""

    values: np.ndarray

    def __post_init__(self):
        m = len(self.values) - 1
        if m < 2 or m & (m - 1):
            raise DomainError(f"grid size {m} is not a power of two")

    @property
    def m(self) -> int:
        return len(self.values) - 1

    @property
    def grid(self) -> np.ndarray:
        return np.linspace(0.0, 1.0, len(self.values))


@dataclass(frozen=True)
class LimitDraw:
    """One realization of the limiting random vector.

    ``comp1``/``comp2`` are the gap and distance components; ``comp_g1`` and
    ``comp_g2`` keep the per-population Gini errors so the normalized-index
    limits can be pushed through numerically (comp1 == comp_g2 - comp_g1).
    """

    comp1: float
    comp2: float
    comp_g1: float = 0.0
    comp_g2: float = 0.0


def brownian_bridge(m: int, seed) -> GridPath:
    """Discrete bridge with the exact finite-dimensional law on the grid.

    Gaussian increments of variance 1/m accumulate to a random walk W, and
    B(t) = W(t) - t W(1) pins both endpoints to zero.
    """
    if m < 2 or m & (m - 1):
        raise DomainError(f"grid size {m} is not a power of two")
    rng = np.random.default_rng(seed)
    w = np.empty(m + 1)
    w[0] = 0.0
    np.cumsum(rng.normal(scale=math.sqrt(1.0 / m), size=m), out=w[1:])
    b = w - np.linspace(0.0, 1.0, m + 1) * w[-1]
    b[0] = 0.0
    b[-1] = 0.0
    return GridPath(b)


@functools.lru_cache(maxsize=16)
def _model_grids(g: gb2.Gb2Params, m: int):
    """Curve values and curvature on the grid (curvature endpoint-truncated)."""
    t = np.linspace(0.0, 1.0, m + 1)
    values = np.empty(m + 1)
    values[0], values[-1] = 0.0, 1.0
    values[1:-1] = gb2._lorenz_values(g, t[1:-1])
    t_eval = t.copy()
    t_eval[0] = 0.5 / m
    t_eval[-1] = 1.0 - 0.5 / m
    curvature = gb2.lorenz_second_derivative(g, t_eval)
    return values, curvature


def _cumulative_trapezoid(values: np.ndarray, dx: float) -> np.ndarray:
    out = np.empty_like(values)
    out[0] = 0.0
    np.cumsum(0.5 * (values[:-1] + values[1:]) * dx, out=out[1:])
    return out


def lorenz_limit_process(g: gb2.Gb2Params, bridge: GridPath) -> GridPath:
    """Gaussian fluctuation process of one population's empirical curve.

    Trapezoid quadrature of curvature times bridge; the curvature blows up
    at the endpoints, so the boundary nodes are evaluated at 1/(2m) inside
    (where the bridge vanishes anyway).  Requires the a*q > 2 condition;
    without it the curvature-bridge product is not integrable.
    """
    if integrity := integrability_gate(g):
        raise integrity
    values, curvature = _model_grids(g, bridge.m)
    integrand = curvature * bridge.values
    partial = _cumulative_trapezoid(integrand, 1.0 / bridge.m)
    return GridPath(values * partial[-1] - partial)


def integrability_gate(g: gb2.Gb2Params) -> IntegrabilityError | None:
    if gb2.integrability_check(g) is not gb2.Integrability.OK:
        return IntegrabilityError(
            f"a*q = {g.a * g.q} <= 2: limit process does not exist"
        )
    return None


def combine_processes(l1: GridPath, l2: GridPath, lam: float) -> GridPath:
    """sqrt(1 - lam) * first - sqrt(lam) * second, pointwise."""
    if l1.m != l2.m:
        raise GridMismatchError(f"grids differ: {l1.m} vs {l2.m}")
    if not 0.0 <= lam <= 1.0:
        raise DomainError("lam must lie in [0, 1]")
    return GridPath(math.sqrt(1.0 - lam) * l1.values - math.sqrt(lam) * l2.values)


def l1_directional_derivative(f: GridPath, g: GridPath, zero_tol: float) -> float:
    """Directional derivative of the L1 norm at f in direction g.

    Integrates |g| where f vanishes and g * sign(f) elsewhere; the zero set
    is taken as {|f| <= zero_tol} on the grid.
    """
    if f.m != g.m:
        raise GridMismatchError(f"grids differ: {f.m} vs {g.m}")
    if zero_tol < 0:
        raise DomainError("zero_tol must be >= 0")
    on_zero = np.abs(f.values) <= zero_tol
    integrand = np.where(on_zero, np.abs(g.values), g.values * np.sign(f.values))
    return float(np.trapezoid(integrand, dx=1.0 / f.m))


def limit_draw(
    g1: gb2.Gb2Params,
    g2: gb2.Gb2Params,
    lam: float = 0.5,
    seed=0,
    m: int = DEFAULT_GRID,
    zero_tol: float = DEFAULT_ZERO_TOL,
) -> LimitDraw:
    """One draw of the limiting vector for a pair of GB2 populations."""
    for g in (g1, g2):
        if err := integrability_gate(g):
            raise err
    s1, s2 = _as_seedseq(seed).spawn(2)
    path1 = lorenz_limit_process(g1, brownian_bridge(m, s1))
    path2 = lorenz_limit_process(g2, brownian_bridge(m, s2))
    combined = combine_processes(path1, path2, lam)
    diff = GridPath(_model_grids(g1, m)[0] - _model_grids(g2, m)[0])
    dx = 1.0 / m
    comp_g1 = -2.0 * math.sqrt(1.0 - lam) * float(np.trapezoid(path1.values, dx=dx))
    comp_g2 = -2.0 * math.sqrt(lam) * float(np.trapezoid(path2.values, dx=dx))
    return LimitDraw(
        comp1=2.0 * float(np.trapezoid(combined.values, dx=dx)),
        comp2=2.0 * l1_directional_derivative(diff, combined, zero_tol),
        comp_g1=comp_g1,
        comp_g2=comp_g2,
    )


def limit_draws(
    g1: gb2.Gb2Params,
    g2: gb2.Gb2Params,
    lam: float = 0.5,
    seed=0,
    draws: int = 1000,
    m: int = DEFAULT_GRID,
    zero_tol: float = DEFAULT_ZERO_TOL,
) -> list[LimitDraw]:
    """Independent draws; each replication gets its own split of the seed."""
    children = _as_seedseq(seed).spawn(draws)
    return [limit_draw(g1, g2, lam, s, m, zero_tol) for s in children]


def monte_carlo_estimator(
    g1: gb2.Gb2Params,
    g2: gb2.Gb2Params,
    n: int,
    reps: int,
    seed=0,
) -> list[tuple[float, float]]:
    """Normalized plug-in errors over independent replications.

    Each replication draws a fresh pair of size-n samples, estimates the
    index from the empirical curves, and normalizes the error against the
    closed-form truth by sqrt(n/2).  Seeds split by replication index, so
    the output does not depend on evaluation order.
    """
    if reps < 1:
        raise DomainError("reps must be >= 1")
    truth = index_raw(gb2.lorenz(g1), gb2.lorenz(g2))
    out = []
    for child in _as_seedseq(seed).spawn(reps):
        c1, c2 = child.spawn(2)
        est = index_raw(
            empirical_lorenz(gb2.sample(g1, n, c1)),
            empirical_lorenz(gb2.sample(g2, n, c2)),
        )
        out.append(normalized_statistic(est, truth, n, n))
    return out


def _moments(x: np.ndarray) -> dict:
    mu = float(np.mean(x))
    sd = float(np.std(x))
    z = (x - mu) / sd if sd > 0 else np.zeros_like(x)
    skew = float(np.mean(z**3))
    exkurt = float(np.mean(z**4) - 3.0)
    return {
        "mean": mu,
        "sd": sd,
        "skewness": skew,
        "excess_kurtosis": exkurt,
        "normal_compatible": abs(skew) <= 0.3 and abs(exkurt) <= 0.5,
    }


def normality_diagnostics(draws) -> dict:
    """Shape summary of a bivariate sample of draws.

    A margin counts as normal-compatible when |skewness| <= 0.3 and
    |excess kurtosis| <= 0.5.
    """
    pairs = [(d.comp1, d.comp2) if isinstance(d, LimitDraw) else tuple(d) for d in draws]
    if len(pairs) < 100:
        raise TooFewDrawsError(f"need >= 100 draws, got {len(pairs)}")
    arr = np.asarray(pairs, dtype=float)
    comp1 = _moments(arr[:, 0])
    comp2 = _moments(arr[:, 1])
    return {
        "n": len(pairs),
        "comp1": comp1,
        "comp2": comp2,
        "normal_compatible": comp1["normal_compatible"] and comp2["normal_compatible"],
    }


# -- first-order push-through for the normalized indices ---------------------


def _star_formula(x: float, y: float) -> tuple[float, float]:
    bound = max_distance_for_gap(x)[1]
    return x, abs(x) + (1.0 - abs(x)) * (y - abs(x)) / (bound - abs(x))


def _upper_formula(x: float, y: float, z: float) -> tuple[float, float]:
    gap = y - x
    return gap, abs(gap) + (1.0 - abs(gap)) * (z - abs(gap)) / (max_distance(x, y) - abs(gap))


def _jacobian(fn, point: np.ndarray, h: float = 1e-6) -> np.ndarray:
    cols = []
    for i in range(len(point)):
        lo, hi = point.copy(), point.copy()
        lo[i] -= h
        hi[i] += h
        cols.append((np.asarray(fn(*hi)) - np.asarray(fn(*lo))) / (2.0 * h))
    return np.column_stack(cols)


def normalized_limit_draws(
    draws: list[LimitDraw], at: RawIndex, variant: Variant
) -> list[tuple[float, float]]:
    """Transform limit draws of the raw index into limits for a normalized one.

    Multiplies each draw by the numerical Jacobian of the triangle map at
    the true index value, which realizes the delta method without writing
    out the partial derivatives.  The maps are not differentiable where the
    gap vanishes or the pair is distance-maximal, so those points are
    rejected.
    """
    gap = at.delta_x
    if variant is Variant.STAR:
        bound = max_distance_for_gap(gap)[1]
        if abs(gap) < 1e-6 or bound - at.distance < 1e-6 or at.distance - abs(gap) < 1e-6:
            raise DegenerateError("triangle map not differentiable at the true index")
        jac = _jacobian(_star_formula, np.array([gap, at.distance]))
        return [tuple(jac @ np.array([d.comp1, d.comp2])) for d in draws]
    bound = max_distance(at.gini1, at.gini2)
    if abs(gap) < 1e-6 or bound - at.distance < 1e-6 or at.distance - abs(gap) < 1e-6:
        raise DegenerateError("triangle map not differentiable at the true index")
    jac = _jacobian(_upper_formula, np.array([at.gini1, at.gini2, at.distance]))
    return [
        tuple(jac @ np.array([d.comp_g1, d.comp_g2, d.comp2])) for d in draws
    ]
