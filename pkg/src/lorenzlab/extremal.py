"""Extreme curves of a fixed-Gini class and maximal-distance geometry.

The curves of Gini index a that cannot be written as proper mixtures fall
into three piecewise-affine families, parameterized by where the kinks sit:

* family "L": flat at 0 on [0, x1], one affine piece up to the left limit
  (1-a)/(1-x1) at 1, then a jump to 1 (x1 in [0, a]);
* family "M": two affine pieces through (x2, x2 - a), continuous at 1
  (x2 in (a, 1));
* family "N": flat on [0, x1], then two affine pieces through
  (x2, (x2-a)/(1-x1)) (x1 in (0, a), x2 in (a, 1)).

The two ends of family "L" are the workhorses: x1 = a gives the curve of a
population where a share a owns nothing ("lower" curve), x1 = 0 the curve
where a vanishing elite owns the share a ("upper" curve).  Any distance
maximum over two fixed-Gini classes is attained on these families, which is
what ``brute_force_max`` exploits as a verification oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .curves import LorenzCurve, _canonical, _unchecked, make_curve
from .errors import BadParamsError, DegenerateError, DomainError

__all__ = [
    "ExtremeSpec",
    "extreme_curve",
    "extreme_lower",
    "extreme_upper",
    "max_distance",
    "max_distance_for_gap",
    "equal_gini_diameter",
    "crossing_point",
    "brute_force_max",
    "in_raw_index_region",
    "in_gini_distance_region",
]

REGION_TOL = 1e-12


@dataclass(frozen=True)
class ExtremeSpec:
    """One extreme curve: family letter, Gini level, kink positions."""

    family: str
    a: float
    x1: float | None = None
    x2: float | None = None

    def __post_init__(self):
        if not 0.0 <= self.a <= 1.0:
            raise BadParamsError(f"gini level a = {self.a} outside [0, 1]")
        if self.family == "L":
            if self.x1 is None or self.x2 is not None:
                raise BadParamsError("family L takes x1 only")
            if not 0.0 <= self.x1 <= self.a:
                raise BadParamsError(f"family L needs x1 in [0, a], got {self.x1}")
        elif self.family == "M":
            if self.x2 is None or self.x1 is not None:
                raise BadParamsError("family M takes x2 only")
            if not self.a < self.x2 < 1.0:
                raise BadParamsError(f"family M needs x2 in (a, 1), got {self.x2}")
        elif self.family == "N":
            if self.x1 is None or self.x2 is None:
                raise BadParamsError("family N takes x1 and x2")
            if not 0.0 < self.x1 < self.a:
                raise BadParamsError(f"family N needs x1 in (0, a), got {self.x1}")
            if not self.a < self.x2 < 1.0:
                raise BadParamsError(f"family N needs x2 in (a, 1), got {self.x2}")
        else:
            raise BadParamsError(f"unknown family {self.family!r}")


def extreme_curve(spec: ExtremeSpec) -> LorenzCurve:
    """Build the piecewise-affine curve described by ``spec``.

    Collinear knots are merged, so e.g. family L at Gini level 1 collapses
    to the perfect-inequality curve whatever x1 is.
    """
    a = spec.a
    if spec.family == "L":
        x1 = spec.x1
        top = 0.0 if x1 == 1.0 else (1.0 - a) / (1.0 - x1)
        ts, ys = [0.0], [0.0]
        if 0.0 < x1 < 1.0:
            ts.append(x1)
            ys.append(0.0)
        ts.append(1.0)
        ys.append(top)
    elif spec.family == "M":
        ts = [0.0, spec.x2, 1.0]
        ys = [0.0, spec.x2 - a, 1.0]
    else:
        h = (spec.x2 - a) / (1.0 - spec.x1)
        ts = [0.0, spec.x1, spec.x2, 1.0]
        ys = [0.0, 0.0, h, 1.0]
    t_arr, y_arr = _canonical(np.asarray(ts), np.asarray(ys))
    return make_curve(np.column_stack([t_arr, y_arr]))


def extreme_lower(a: float) -> LorenzCurve:
    """Curve of Gini a with minimal running integral: a share a owns nothing."""
    if not 0.0 <= a <= 1.0:
        raise DomainError(f"a = {a} outside [0, 1]")
    return extreme_curve(ExtremeSpec("L", a, x1=a))


def extreme_upper(a: float) -> LorenzCurve:
    """Curve of Gini a with maximal running integral: a vanishing elite owns a."""
    if not 0.0 <= a <= 1.0:
        raise DomainError(f"a = {a} outside [0, 1]")
    return extreme_curve(ExtremeSpec("L", a, x1=0.0))


def max_distance(a: float, b: float) -> float:
    """Largest Lorenz distance between curves of Gini a and Gini b.

    Equals ((1-a) b^2 + (1-b) a^2) / (a + b - a b), with the value 0 at
    (0, 0) taken by continuity.  It is attained exactly at the pairs
    (lower a, upper b) and (upper a, lower b).
    """
    if not (0.0 <= a <= 1.0 and 0.0 <= b <= 1.0):
        raise DomainError(f"(a, b) = ({a}, {b}) outside the unit square")
    denom = a + b - a * b
    if denom == 0.0:
        return 0.0
    return ((1.0 - a) * b * b + (1.0 - b) * a * a) / denom


def _max_distance_arr(a, b):
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    denom = a + b - a * b
    num = (1.0 - a) * b * b + (1.0 - b) * a * a
    return np.where(denom > 0.0, num / np.where(denom > 0.0, denom, 1.0), 0.0)


def _gap_bound_arr(c):
    c2 = np.square(np.asarray(c, dtype=float))
    return 8.0 - (8.0 + np.power(c2 + 8.0, 1.5)) / (c2 + 4.0)


def max_distance_for_gap(c: float) -> tuple[float, float]:
    """Largest distance over all pairs whose Gini indices differ by c.

    Returns the smaller Gini level of the maximizing pair and the maximal
    value 8 - (8 + (c^2+8)^{3/2})/(c^2+4).  Both are even in c; the level is
    (4 - |c| - sqrt(8 + c^2))/2.
    """
    if not -1.0 <= c <= 1.0:
        raise DomainError(f"gap c = {c} outside [-1, 1]")
    g = abs(c)
    level = (4.0 - g - math.sqrt(8.0 + g * g)) / 2.0
    value = 8.0 - (8.0 + (g * g + 8.0) ** 1.5) / (g * g + 4.0)
    return level, value


def equal_gini_diameter(a: float) -> float:
    """Largest distance between two curves sharing the Gini index a: 2a(1-a)/(2-a)."""
    return 2.0 * a * (1.0 - a) / (2.0 - a)


def crossing_point(a: float, b: float) -> float:
    """Unique crossing of the pair (lower curve of Gini a, upper curve of Gini b).

    The curves extreme_lower(a) and extreme_upper(b) switch order exactly once,
    at t = a / (a + b - ab).
    """
    denom = a + b - a * b
    if denom <= 0.0:
        raise DegenerateError("curves coincide with the diagonal at a = b = 0")
    return a / denom


# -- brute-force oracle ------------------------------------------------------
#
# Candidate curves are encoded as three affine pieces with breakpoints
# (b1, b2) and slopes (s1, s2, s3); degenerate zero-width pieces are allowed.
# That makes pairwise evaluation and the exact |difference| integral fully
# vectorizable: a pair has at most six breakpoints, and on each cell the
# difference is linear, so the sign change is located analytically.


def _family_params(specs: list[ExtremeSpec]) -> np.ndarray:
    rows = np.empty((len(specs), 5))
    for i, s in enumerate(specs):
        if s.family == "L":
            x1 = s.x1
            s2 = 0.0 if x1 == 1.0 else (1.0 - s.a) / (1.0 - x1) ** 2
            rows[i] = (x1, 1.0, 0.0, s2, 0.0)
        elif s.family == "M":
            x2 = s.x2
            rows[i] = (x2, 1.0, (x2 - s.a) / x2, (1.0 - x2 + s.a) / (1.0 - x2), 0.0)
        else:
            x1, x2 = s.x1, s.x2
            h = (x2 - s.a) / (1.0 - x1)
            rows[i] = (x1, x2, 0.0, h / (x2 - x1), (1.0 - h) / (1.0 - x2))
    return rows


def _piecewise_values(params: np.ndarray, ts: np.ndarray) -> np.ndarray:
    """Continuous-part values of encoded curves at points ts (broadcast)."""
    b1 = params[..., 0:1]
    b2 = params[..., 1:2]
    s1 = params[..., 2:3]
    s2 = params[..., 3:4]
    s3 = params[..., 4:5]
    return (
        s1 * np.minimum(ts, b1)
        + s2 * np.clip(np.minimum(ts, b2) - b1, 0.0, None)
        + s3 * np.clip(ts - b2, 0.0, None)
    )


def _grid_specs(a: float, grid: int, include_three_piece: bool) -> list[ExtremeSpec]:
    specs: list[ExtremeSpec] = []
    for x1 in np.unique(np.linspace(0.0, a, grid)):
        specs.append(ExtremeSpec("L", a, x1=float(x1)))
    if a < 1.0:
        inner = np.arange(1, grid + 1) / (grid + 1)
        for u in inner:
            specs.append(ExtremeSpec("M", a, x2=float(a + (1.0 - a) * u)))
        if include_three_piece and a > 0.0:
            gn = max(1, math.isqrt(grid))
            sub = np.arange(1, gn + 1) / (gn + 1)
            for u in sub:
                for v in sub:
                    specs.append(
                        ExtremeSpec(
                            "N", a, x1=float(a * u), x2=float(a + (1.0 - a) * v)
                        )
                    )
    return specs


def brute_force_max(
    a: float,
    b: float,
    grid: int,
    include_three_piece: bool = True,
) -> tuple[float, tuple[ExtremeSpec, ExtremeSpec]]:
    """Maximize the Lorenz distance over gridded pairs of extreme curves.

    Verification oracle for ``max_distance``: every candidate really lies in
    its Gini class, so the result can never exceed the closed form (beyond
    float rounding), and since the closed "L" parameter box keeps both ends,
    the true maximizing pair is always among the candidates.

    ``grid`` is the number of samples per family; family "N" spends it on a
    floor(sqrt(grid)) x floor(sqrt(grid)) lattice so all families weigh in at
    comparable cost.  Set ``include_three_piece=False`` to drop family "N"
    (its members never attain the maximum; the default keeps them to check
    that empirically).  Ties break to the lexicographically first pair in
    (family, x1, x2) order with L < M < N.
    """
    if grid < 2:
        raise DomainError("grid must be >= 2")
    specs1 = _grid_specs(a, grid, include_three_piece)
    specs2 = _grid_specs(b, grid, include_three_piece)
    p1 = _family_params(specs1)
    p2 = _family_params(specs2)

    best_val = -1.0
    best_pair = (0, 0)
    chunk = max(1, int(2e6 // max(1, len(specs2))))
    ends = np.array([0.0, 1.0])
    for lo in range(0, len(specs1), chunk):
        hi = min(lo + chunk, len(specs1))
        q1 = p1[lo:hi][:, None, :]                      # (c, 1, 5)
        q2 = p2[None, :, :]                             # (1, n2, 5)
        brk = np.concatenate(
            [
                np.broadcast_to(q1[..., 0:2], (hi - lo, len(specs2), 2)),
                np.broadcast_to(q2[..., 0:2], (hi - lo, len(specs2), 2)),
                np.broadcast_to(ends, (hi - lo, len(specs2), 2)),
            ],
            axis=-1,
        )
        brk = np.sort(brk, axis=-1)                     # (c, n2, 6)
        d = _piecewise_values(q1, brk) - _piecewise_values(q2, brk)
        du, dv = d[..., :-1], d[..., 1:]
        dt = np.diff(brk, axis=-1)
        denom = np.abs(du) + np.abs(dv)
        cell = np.where(
            du * dv >= 0.0,
            0.5 * denom * dt,
            0.5 * (du * du + dv * dv) / np.where(denom == 0.0, 1.0, denom) * dt,
        )
        dist = 2.0 * np.sum(cell, axis=-1)              # (c, n2)
        flat = int(np.argmax(dist))
        val = float(dist.flat[flat])
        if val > best_val:
            best_val = val
            best_pair = (lo + flat // len(specs2), flat % len(specs2))
    return best_val, (specs1[best_pair[0]], specs2[best_pair[1]])


# -- attainable regions of the index ----------------------------------------


def in_raw_index_region(x, y, tol: float = REGION_TOL):
    """Membership in the attainable set of (Gini gap, distance) pairs.

    The set is {|x| <= y <= bound(x)} where bound is the maximal distance
    for the gap x; boundary points count as members (tolerance 1e-12).
    Accepts scalars or arrays.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    ok = (
        (np.abs(x) <= 1.0 + tol)
        & (y >= -tol)
        & (y <= 1.0 + tol)
        & (np.abs(x) <= y + tol)
        & (y <= _gap_bound_arr(x) + tol)
    )
    return bool(ok) if ok.ndim == 0 else ok


def in_gini_distance_region(x, y, z, tol: float = REGION_TOL):
    """Membership in the attainable set of (Gini 1, Gini 2, distance) triples.

    The set is {|x - y| <= z <= max_distance(x, y)} inside the unit cube;
    boundaries included.  Accepts scalars or arrays.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    z = np.asarray(z, dtype=float)
    ok = (
        (x >= -tol)
        & (x <= 1.0 + tol)
        & (y >= -tol)
        & (y <= 1.0 + tol)
        & (z >= -tol)
        & (z <= 1.0 + tol)
        & (np.abs(x - y) <= z + tol)
        & (z <= _max_distance_arr(x, y) + tol)
    )
    return bool(ok) if ok.ndim == 0 else ok
