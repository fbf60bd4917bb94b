"""Piecewise-linear Lorenz curves and exact L1 geometry on them.

A curve is stored as knots (t_i, y_i) on [0, 1] with t_0 = 0, y_0 = 0 and
t_k = 1.  The ordinate at the last knot is the *left limit* at 1; the value
at t = 1 itself is always 1, so a curve may carry a jump of size 1 - y_k at
the right endpoint (the perfect-inequality curve and the "single rich
household" curves do).  The jump sits on a set of measure zero, so every
integral below works off the knots alone.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import (
    BadEndpointsError,
    DomainError,
    NonConvexError,
    NotMonotoneError,
    OutOfRangeError,
)

__all__ = [
    "LorenzCurve",
    "Dominance",
    "make_curve",
    "perfect_equality",
    "perfect_inequality",
    "evaluate",
    "l1_norm",
    "gini",
    "lorenz_distance",
    "dominates",
    "reflect",
    "cumulative_integral",
    "convex_combination",
    "curve_to_dict",
    "curve_from_dict",
]

# Relative tolerance for the slope-monotonicity (convexity) check.
SLOPE_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class LorenzCurve:
    """Convex non-decreasing piecewise-linear curve with implied value 1 at t=1.

    ``ts``/``ys`` hold the knot coordinates; both arrays are read-only.
    Instances are immutable, so every operation in this module is safe for
    unrestricted concurrent use.
    """

    ts: np.ndarray
    ys: np.ndarray

    @property
    def knots(self) -> list[tuple[float, float]]:
        return list(zip(self.ts.tolist(), self.ys.tolist()))

    @property
    def left_limit_at_one(self) -> float:
        return float(self.ys[-1])

    @property
    def has_jump(self) -> bool:
        return self.ys[-1] < 1.0

    def __call__(self, t: float) -> float:
        return evaluate(self, t)

    def __repr__(self) -> str:  # keep reprs short for big empirical curves
        if len(self.ts) <= 6:
            return f"LorenzCurve({self.knots})"
        return f"LorenzCurve(<{len(self.ts)} knots>, left_limit={self.ys[-1]:.6g})"


def _freeze(ts: np.ndarray, ys: np.ndarray) -> LorenzCurve:
    ts = np.ascontiguousarray(ts, dtype=float)
    ys = np.ascontiguousarray(ys, dtype=float)
    ts.setflags(write=False)
    ys.setflags(write=False)
    return LorenzCurve(ts, ys)


def _unchecked(ts, ys) -> LorenzCurve:
    """Constructor for curves that are convex by construction (no validation)."""
    return _freeze(np.asarray(ts, dtype=float), np.asarray(ys, dtype=float))


def make_curve(knots) -> LorenzCurve:
    """Validate a knot list and build a curve.

    Rejects anything that is not a curve of the closed Lorenz class: wrong
    endpoints, coordinates outside [0,1], decreasing ordinates, or segment
    slopes that decrease by more than a 1e-12 relative tolerance.  Input
    values are never altered.
    """
    pts = np.asarray(list(knots), dtype=float)
    if pts.ndim != 2 or pts.shape[0] < 2 or pts.shape[1] != 2:
        raise BadEndpointsError("need at least two (t, y) knots")
    ts, ys = pts[:, 0], pts[:, 1]
    if ts[0] != 0.0 or ys[0] != 0.0:
        raise BadEndpointsError(f"first knot must be (0, 0), got ({ts[0]}, {ys[0]})")
    if ts[-1] != 1.0:
        raise BadEndpointsError(f"last knot must sit at t = 1, got t = {ts[-1]}")
    if np.any(ts < 0.0) or np.any(ts > 1.0) or np.any(ys < 0.0) or np.any(ys > 1.0):
        raise OutOfRangeError("knot coordinates must lie in [0, 1]")
    dt = np.diff(ts)
    if np.any(dt <= 0.0):
        raise NotMonotoneError("knot abscissae must be strictly increasing")
    dy = np.diff(ys)
    if np.any(dy < 0.0):
        raise NotMonotoneError("knot ordinates must be non-decreasing")
    slopes = dy / dt
    if slopes.size > 1:
        scale = np.maximum(1.0, np.maximum(np.abs(slopes[:-1]), np.abs(slopes[1:])))
        if np.any(slopes[1:] - slopes[:-1] < -SLOPE_TOL * scale):
            raise NonConvexError("segment slopes must be non-decreasing")
    return _freeze(ts.copy(), ys.copy())


def perfect_equality() -> LorenzCurve:
    """The diagonal: everyone holds the same income."""
    return _unchecked([0.0, 1.0], [0.0, 1.0])


def perfect_inequality() -> LorenzCurve:
    """Zero on [0, 1) with a unit jump at 1: one person holds everything."""
    return _unchecked([0.0, 1.0], [0.0, 0.0])


def evaluate(curve: LorenzCurve, t: float) -> float:
    """Curve value at t; linear between knots, exactly 1 at t = 1."""
    if not 0.0 <= t <= 1.0:
        raise DomainError(f"t = {t} outside [0, 1]")
    if t == 1.0:
        return 1.0
    return float(np.interp(t, curve.ts, curve.ys))


def _values_on(curve: LorenzCurve, ts: np.ndarray) -> np.ndarray:
    """Continuous-part values at many points (left limit at 1, not the jump)."""
    return np.interp(ts, curve.ts, curve.ys)


def l1_norm(curve: LorenzCurve) -> float:
    """Integral of the curve over [0, 1]; exact trapezoid over the knots."""
    return float(np.trapezoid(curve.ys, curve.ts))


def gini(curve: LorenzCurve) -> float:
    """Gini index: one minus twice the area under the curve."""
    return 1.0 - 2.0 * l1_norm(curve)


def _merged_grid(c1: LorenzCurve, c2: LorenzCurve) -> np.ndarray:
    return np.union1d(c1.ts, c2.ts)


def _abs_diff_integral(ts: np.ndarray, d: np.ndarray) -> float:
    """Exact integral of |d| where d is linear between consecutive ts.

    On a segment whose endpoint values have opposite signs the line crosses
    zero inside, and the two triangles integrate to
    dt * (du^2 + dv^2) / (2 (|du| + |dv|)).
    """
    du, dv = d[:-1], d[1:]
    dt = np.diff(ts)
    same = du * dv >= 0.0
    area_same = 0.5 * (np.abs(du) + np.abs(dv)) * dt
    denom = np.abs(du) + np.abs(dv)
    denom = np.where(denom == 0.0, 1.0, denom)
    area_cross = 0.5 * (du * du + dv * dv) / denom * dt
    return float(np.sum(np.where(same, area_same, area_cross)))


def lorenz_distance(c1: LorenzCurve, c2: LorenzCurve) -> float:
    """Twice the exact L1 distance between two curves.

    The difference is piecewise linear on the merged knot grid; each segment
    is integrated analytically, splitting at the sign change when there is
    one, so the result carries no quadrature error.
    """
    ts = _merged_grid(c1, c2)
    d = _values_on(c1, ts) - _values_on(c2, ts)
    return 2.0 * _abs_diff_integral(ts, d)


class Dominance(enum.Enum):
    LORENZ_LE = "lorenz_le"   # first curve >= second pointwise: X1 fairer
    LORENZ_GE = "lorenz_ge"   # second curve >= first pointwise: X2 fairer
    CROSSING = "crossing"
    EQUAL = "equal"


def dominates(c1: LorenzCurve, c2: LorenzCurve, tol: float = 1e-9) -> Dominance:
    """Pointwise comparison on the merged knot grid.

    ``LORENZ_LE`` means the first variable is the fairer one (its curve lies
    above), i.e. it precedes the second in the Lorenz order.  Checking at the
    merged knots is sufficient: a piecewise-linear difference changes sign
    only by passing through knot values of opposite sign.
    """
    if tol < 0:
        raise DomainError("tol must be >= 0")
    ts = _merged_grid(c1, c2)
    d = _values_on(c1, ts) - _values_on(c2, ts)
    if np.max(np.abs(d)) <= tol:
        return Dominance.EQUAL
    if np.all(d >= -tol):
        return Dominance.LORENZ_LE
    if np.all(d <= tol):
        return Dominance.LORENZ_GE
    return Dominance.CROSSING


def _canonical(ts: np.ndarray, ys: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Drop interior knots that are collinear with their neighbours."""
    if len(ts) <= 2:
        return ts, ys
    keep = [0]
    for i in range(1, len(ts) - 1):
        j = keep[-1]
        s_prev = (ys[i] - ys[j]) / (ts[i] - ts[j])
        s_next = (ys[i + 1] - ys[i]) / (ts[i + 1] - ts[i])
        if abs(s_next - s_prev) > 1e-13 * max(1.0, abs(s_prev), abs(s_next)):
            keep.append(i)
    keep.append(len(ts) - 1)
    return ts[keep], ys[keep]


def reflect(curve: LorenzCurve) -> LorenzCurve:
    """Image under x -> 1 - inverse(1 - x): the graph mirrored across y = 1 - x.

    The generalized (infimum) inverse of a piecewise-linear curve is again
    piecewise linear, so the reflection is exact: each knot (t, y) maps to
    (1 - y, 1 - t), an initial flat becomes the terminal jump and vice
    versa.  The map is an involution and an isometry for the Lorenz
    distance, and it preserves the Gini index.
    """
    ts, ys = curve.ts, curve.ys
    rt = (1.0 - ys)[::-1]
    ry = (1.0 - ts)[::-1]
    # truncate at the first point reaching t = 1: lower images of a flat in
    # the source become the jump of the reflection
    at_one = np.nonzero(rt >= 1.0)[0]
    if at_one.size:
        rt = rt[: at_one[0] + 1]
        ry = ry[: at_one[0] + 1]
    if rt[0] > 0.0:
        rt = np.concatenate([[0.0], rt])
        ry = np.concatenate([[0.0], ry])
    rt, ry = _canonical(rt, ry)
    return _unchecked(rt, ry)


def cumulative_integral(curve: LorenzCurve, t: float) -> float:
    """Exact integral of the curve over [0, t]."""
    if not 0.0 <= t <= 1.0:
        raise DomainError(f"t = {t} outside [0, 1]")
    ts, ys = curve.ts, curve.ys
    full = ts <= t
    n = int(np.sum(full))
    acc = float(np.trapezoid(ys[:n], ts[:n])) if n >= 2 else 0.0
    if n and ts[n - 1] < t:
        y_t = float(np.interp(t, ts, ys))
        acc += 0.5 * (ys[n - 1] + y_t) * (t - ts[n - 1])
    return acc


def convex_combination(c1: LorenzCurve, c2: LorenzCurve, w: float) -> LorenzCurve:
    """Pointwise mixture w*c1 + (1-w)*c2, exact on the merged knot grid."""
    if not 0.0 <= w <= 1.0:
        raise DomainError("mixture weight must lie in [0, 1]")
    ts = _merged_grid(c1, c2)
    ys = w * _values_on(c1, ts) + (1.0 - w) * _values_on(c2, ts)
    return _unchecked(ts, ys)


def curve_to_dict(curve: LorenzCurve) -> dict:
    """JSON form: {"knots": [[t, y], ...]}; the terminal value 1 is implied."""
    return {"knots": [[t, y] for t, y in curve.knots]}


def curve_from_dict(payload: dict) -> LorenzCurve:
    return make_curve(payload["knots"])
