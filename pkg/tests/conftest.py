import numpy as np
import pytest

from lorenzlab import convex_combination, extreme_curve
from lorenzlab.extremal import ExtremeSpec


def random_extreme_spec(a: float, rng: np.random.Generator) -> ExtremeSpec:
    """Uniformly pick a family and admissible kink positions at Gini level a."""
    choices = ["L"]
    if a < 1.0:
        choices.append("M")
        if a > 0.0:
            choices.append("N")
    family = rng.choice(choices)
    if family == "L":
        return ExtremeSpec("L", a, x1=float(rng.uniform(0.0, a)))
    if family == "M":
        return ExtremeSpec("M", a, x2=float(rng.uniform(a + 1e-9, 1.0 - 1e-9)))
    return ExtremeSpec(
        "N",
        a,
        x1=float(rng.uniform(1e-9, a - 1e-9)) if a > 2e-9 else a / 2,
        x2=float(rng.uniform(a + 1e-9, 1.0 - 1e-9)),
    )


def random_curve_with_gini(a: float, rng: np.random.Generator, parts: int = 4):
    """Random member of the Gini-a class: a mixture of its extreme curves."""
    curve = extreme_curve(random_extreme_spec(a, rng))
    for _ in range(parts - 1):
        other = extreme_curve(random_extreme_spec(a, rng))
        curve = convex_combination(curve, other, float(rng.uniform(0.2, 0.8)))
    return curve


def random_curve(rng: np.random.Generator, parts: int = 4):
    return random_curve_with_gini(float(rng.uniform(0.02, 0.98)), rng, parts)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
