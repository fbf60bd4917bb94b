"""Bidimensional inequality indices and their triangle normalizations.

The raw index of a pair of curves is (Gini gap, Lorenz distance) with the
gap oriented as gini2 - gini1, so a positive first component means the
first population is the fairer one.  Two normalizations stretch the narrow
attainable region onto the triangle |x| <= y <= 1:

* the "star" map rescales the distance by the maximal distance for the
  observed *gap*, so only pairs maximal for their gap reach the top side;
* the "upper" map rescales by the maximal distance for the observed *pair
  of Gini values*, sending every distance-maximal pair to the top side.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .curves import LorenzCurve, gini, lorenz_distance
from .errors import OutsideRegionError
from .extremal import (
    in_gini_distance_region,
    in_raw_index_region,
    max_distance,
    max_distance_for_gap,
)

__all__ = [
    "RawIndex",
    "NormalizedIndex",
    "Variant",
    "FrontierClass",
    "index_raw",
    "triangle_map_star",
    "triangle_map_upper",
    "index_star",
    "index_upper",
    "classify",
    "index_record",
]

_DEGENERATE = 1e-15


@dataclass(frozen=True)
class RawIndex:
    gini1: float
    gini2: float
    distance: float

    @property
    def delta_x(self) -> float:
        """Signed Gini gap: gini2 - gini1."""
        return self.gini2 - self.gini1


class Variant(enum.Enum):
    STAR = "star"     # stretched by the gap bound
    UPPER = "upper"   # stretched by the two-Gini bound


@dataclass(frozen=True)
class NormalizedIndex:
    x: float
    y: float
    variant: Variant


class FrontierClass(enum.Enum):
    INTERIOR = "interior"
    LEG1 = "leg1"             # y = x: first population fairer, curves ordered
    LEG2 = "leg2"             # y = -x: second population fairer, curves ordered
    HYPOTENUSE = "hypotenuse"  # distance-maximal pair
    ORIGIN = "origin"         # equal in distribution up to scale
    VERTEX_POS = "vertex_pos"  # perfect equality vs perfect inequality
    VERTEX_NEG = "vertex_neg"  # perfect inequality vs perfect equality


def index_raw(c1: LorenzCurve, c2: LorenzCurve) -> RawIndex:
    """Exact Ginis and Lorenz distance of a pair of curves."""
    return RawIndex(gini(c1), gini(c2), lorenz_distance(c1, c2))


def triangle_map_star(x: float, y: float) -> tuple[float, float]:
    """Stretch (gap, distance) onto the triangle using the gap bound.

    The segment from y = |x| to y = bound(x) maps linearly onto
    [|x|, 1].  Where the bound collapses onto |x| (only at |x| = 1)
    the lower-boundary image (x, |x|) is returned, the limit along the legs.
    """
    if not in_raw_index_region(x, y):
        raise OutsideRegionError(f"({x}, {y}) not attainable as (gap, distance)")
    bound = max_distance_for_gap(x)[1]
    span = bound - abs(x)
    if span <= _DEGENERATE:
        return x, abs(x)
    return x, abs(x) + (1.0 - abs(x)) * (y - abs(x)) / span


def triangle_map_upper(x: float, y: float, z: float) -> tuple[float, float]:
    """Stretch (gini1, gini2, distance) onto the triangle using the pair bound.

    Not injective: every pair attaining max_distance(x, y) lands on the top
    side.  Degenerate classes where the bound equals |y - x| (either Gini
    equal to 0 or 1) map to the lower boundary (y - x, |y - x|).
    """
    if not in_gini_distance_region(x, y, z):
        raise OutsideRegionError(f"({x}, {y}, {z}) not attainable as (gini, gini, distance)")
    gap = y - x
    span = max_distance(x, y) - abs(gap)
    if span <= _DEGENERATE:
        return gap, abs(gap)
    return gap, abs(gap) + (1.0 - abs(gap)) * (z - abs(gap)) / span


def index_star(c1: LorenzCurve, c2: LorenzCurve) -> NormalizedIndex:
    raw = index_raw(c1, c2)
    x, y = triangle_map_star(raw.delta_x, raw.distance)
    return NormalizedIndex(x, y, Variant.STAR)


def index_upper(c1: LorenzCurve, c2: LorenzCurve) -> NormalizedIndex:
    raw = index_raw(c1, c2)
    x, y = triangle_map_upper(raw.gini1, raw.gini2, raw.distance)
    return NormalizedIndex(x, y, Variant.UPPER)


def classify(idx: NormalizedIndex, tol: float) -> FrontierClass:
    """Locate a normalized index on the triangle frontier.

    Precedence: vertices, then legs, then the hypotenuse; everything else is
    interior.  A point on a leg certifies that the underlying curves are
    ordered; a point on the hypotenuse that the pair is distance-maximal.
    """
    if tol < 0:
        raise OutsideRegionError("tol must be >= 0")
    x, y = idx.x, idx.y
    if max(abs(x), abs(y)) <= tol:
        return FrontierClass.ORIGIN
    if max(abs(x - 1.0), abs(y - 1.0)) <= tol:
        return FrontierClass.VERTEX_POS
    if max(abs(x + 1.0), abs(y - 1.0)) <= tol:
        return FrontierClass.VERTEX_NEG
    if abs(y - x) <= tol:
        return FrontierClass.LEG1
    if abs(y + x) <= tol:
        return FrontierClass.LEG2
    if 1.0 - y <= tol:
        return FrontierClass.HYPOTENUSE
    return FrontierClass.INTERIOR


def index_record(c1: LorenzCurve, c2: LorenzCurve, tol: float = 1e-9) -> dict:
    """Full JSON record of one comparison."""
    raw = index_raw(c1, c2)
    star = triangle_map_star(raw.delta_x, raw.distance)
    upper = triangle_map_upper(raw.gini1, raw.gini2, raw.distance)
    cls = classify(NormalizedIndex(*star, Variant.STAR), tol)
    return {
        "gini1": raw.gini1,
        "gini2": raw.gini2,
        "dL": raw.distance,
        "I": [raw.delta_x, raw.distance],
        "Istar": list(star),
        "Iupper": list(upper),
        "class": cls.value,
    }
