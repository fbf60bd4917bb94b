"""Lorenz-curve geometry, bidimensional inequality indices, and their estimators."""

from .curves import (
    Dominance,
    LorenzCurve,
    convex_combination,
    cumulative_integral,
    curve_from_dict,
    curve_to_dict,
    dominates,
    evaluate,
    gini,
    l1_norm,
    lorenz_distance,
    make_curve,
    perfect_equality,
    perfect_inequality,
    reflect,
)
from .empirical import (
    WeightedSample,
    empirical_lorenz,
    normalized_statistic,
    plug_in_indices,
    weighted_mean,
    weighted_sample,
)
from .extremal import (
    ExtremeSpec,
    brute_force_max,
    crossing_point,
    equal_gini_diameter,
    extreme_curve,
    extreme_lower,
    extreme_upper,
    in_gini_distance_region,
    in_raw_index_region,
    max_distance,
    max_distance_for_gap,
)
from .indices import (
    FrontierClass,
    NormalizedIndex,
    RawIndex,
    Variant,
    classify,
    index_raw,
    index_record,
    index_star,
    index_upper,
    triangle_map_star,
    triangle_map_upper,
)

__all__ = [
    "Dominance",
    "LorenzCurve",
    "convex_combination",
    "cumulative_integral",
    "curve_from_dict",
    "curve_to_dict",
    "dominates",
    "evaluate",
    "gini",
    "l1_norm",
    "lorenz_distance",
    "make_curve",
    "perfect_equality",
    "perfect_inequality",
    "reflect",
    "WeightedSample",
    "empirical_lorenz",
    "normalized_statistic",
    "plug_in_indices",
    "weighted_mean",
    "weighted_sample",
    "ExtremeSpec",
    "brute_force_max",
    "crossing_point",
    "equal_gini_diameter",
    "extreme_curve",
    "extreme_lower",
    "extreme_upper",
    "in_gini_distance_region",
    "in_raw_index_region",
    "max_distance",
    "max_distance_for_gap",
    "FrontierClass",
    "NormalizedIndex",
    "RawIndex",
    "Variant",
    "classify",
    "index_raw",
    "index_record",
    "index_star",
    "index_upper",
    "triangle_map_star",
    "triangle_map_upper",
]
