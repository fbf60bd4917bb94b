"""Data ingestion, comparison workflows, and static SVG charts."""

from __future__ import annotations

import csv
import enum
import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import gb2
from .curves import gini as curve_gini
from .empirical import WeightedSample, empirical_lorenz, weighted_mean, weighted_sample
from .errors import MissingColumnError, NoValidRowsError
from .extremal import _gap_bound_arr, in_raw_index_region
from .indices import FrontierClass, NormalizedIndex, Variant, classify, index_record

__all__ = [
    "Dataset",
    "ComparisonRun",
    "ChartKind",
    "ingest_csv",
    "dataset_from_sample",
    "run_comparison",
    "run_to_json",
    "run_from_json",
    "emit_chart",
    "calibrate_gb2",
    "synthesize_csv",
]


@dataclass(frozen=True, eq=False)
class Dataset:
    label: str
    sample: WeightedSample
    source_path: str = ""
    dropped_negative: int = 0
    dropped_missing: int = 0


@dataclass(frozen=True, eq=False)
class ComparisonRun:
    baseline: str
    targets: list[str]
    results: list[dict]


class ChartKind(enum.Enum):
    TRIANGLE = "triangle"
    DELTA_REGION = "delta"


def _parse_float(text: str) -> float | None:
    try:
        v = float(text)
    except (TypeError, ValueError):
        return None
    return v if math.isfinite(v) else None


def ingest_csv(path, income_column: str, weight_column: str | None = None, label: str | None = None) -> Dataset:
    """Read a comma-separated UTF-8 file with a header row.

    Rows whose income is missing or unparseable are dropped and counted as
    missing; negative incomes are dropped and counted separately (survey
    files can carry negative disposable incomes, which the curve machinery
    rejects).  Without a weight column every row gets weight 1; rows with
    missing or non-positive weights are dropped as missing.
    """
    path = Path(path)
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        if income_column not in header:
            raise MissingColumnError(f"no column {income_column!r} in {path.name} (has {header})")
        if weight_column is not None and weight_column not in header:
            raise MissingColumnError(f"no column {weight_column!r} in {path.name} (has {header})")
        values, weights = [], []
        dropped_negative = dropped_missing = 0
        for row in reader:
            v = _parse_float(row.get(income_column, ""))
            if v is None:
                dropped_missing += 1
                continue
            if v < 0.0:
                dropped_negative += 1
                continue
            if weight_column is None:
                w = 1.0
            else:
                w = _parse_float(row.get(weight_column, ""))
                if w is None or w <= 0.0:
                    dropped_missing += 1
                    continue
            values.append(v)
            weights.append(w)
    if not values:
        raise NoValidRowsError(f"no usable rows in {path}")
    return Dataset(
        label=label or path.stem,
        sample=weighted_sample(values, weights),
        source_path=str(path),
        dropped_negative=dropped_negative,
        dropped_missing=dropped_missing,
    )


def dataset_from_sample(label: str, sample: WeightedSample) -> Dataset:
    return Dataset(label=label, sample=sample)


def run_comparison(baseline: Dataset, targets: list[Dataset]) -> ComparisonRun:
    """Index the baseline against each target.

    Every result carries the full index record, its frontier class at the
    sample-size tolerance 1/sqrt(min(n1, n2)), and both datasets' weighted
    means.  Emitted raw indices are checked against the attainable region.
    """
    if not targets:
        raise NoValidRowsError("need at least one target dataset")
    base_curve = empirical_lorenz(baseline.sample)
    results = []
    for target in targets:
        t_curve = empirical_lorenz(target.sample)
        n1, n2 = baseline.sample.size, target.sample.size
        tol = 1.0 / math.sqrt(min(n1, n2))
        rec = index_record(base_curve, t_curve, tol=tol)
        assert in_raw_index_region(rec["I"][0], rec["I"][1], tol=1e-9)
        rec.update(
            {
                "baseline": baseline.label,
                "target": target.label,
                "n1": n1,
                "n2": n2,
                "tol": tol,
                "mean1": weighted_mean(baseline.sample),
                "mean2": weighted_mean(target.sample),
            }
        )
        results.append(rec)
    return ComparisonRun(baseline.label, [t.label for t in targets], results)


def run_to_json(run: ComparisonRun) -> str:
    return json.dumps(
        {"baseline": run.baseline, "targets": run.targets, "results": run.results},
        indent=2,
        sort_keys=True,
    )


def run_from_json(text: str) -> ComparisonRun:
    payload = json.loads(text)
    return ComparisonRun(payload["baseline"], payload["targets"], payload["results"])


# -- SVG ---------------------------------------------------------------------

_W, _H = 1000, 700


def _esc(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def _fmt(v: float) -> str:
    return f"{v:.3f}"


class _Frame:
    """Affine data-to-pixel transform shared by both chart kinds."""

    def __init__(self, x_lo, x_hi, y_lo, y_hi, left=90, right=960, top=50, bottom=640):
        self.sx = (right - left) / (x_hi - x_lo)
        self.sy = (bottom - top) / (y_hi - y_lo)
        self.x_lo, self.y_lo = x_lo, y_lo
        self.left, self.bottom = left, bottom

    def x(self, v: float) -> float:
        return self.left + (v - self.x_lo) * self.sx

    def y(self, v: float) -> float:
        return self.bottom - (v - self.y_lo) * self.sy

    def pt(self, x: float, y: float) -> str:
        return f"{_fmt(self.x(x))},{_fmt(self.y(y))}"


def _svg_header() -> list[str]:
    return [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {_W} {_H}" '
        f'font-family="sans-serif" font-size="16">',
        f'<rect width="{_W}" height="{_H}" fill="white"/>',
    ]


def _points_layer(frame: _Frame, points: list[tuple[str, float, float]]) -> list[str]:
    out = []
    for label, x, y in points:
        px, py = frame.x(x), frame.y(y)
        out.append(f'<circle cx="{_fmt(px)}" cy="{_fmt(py)}" r="5" fill="crimson"/>')
        out.append(
            f'<text x="{_fmt(px + 8)}" y="{_fmt(py - 6)}" font-size="13" fill="crimson">'
            f"{_esc(label)}</text>"
        )
    return out


def _triangle_svg(points: list[tuple[str, float, float]]) -> str:
    fr = _Frame(-1.15, 1.15, -0.08, 1.12)
    parts = _svg_header()
    tri = " ".join(fr.pt(*p) for p in [(0, 0), (1, 1), (-1, 1)])
    parts.append(f'<polygon points="{tri}" fill="#e4f7d2" stroke="black" stroke-width="2"/>')
    parts.append(
        f'<line x1="{_fmt(fr.x(0))}" y1="{_fmt(fr.y(0))}" x2="{_fmt(fr.x(0))}" '
        f'y2="{_fmt(fr.y(1))}" stroke="black" stroke-dasharray="6,4"/>'
    )
    # frontier annotations
    leg1 = (fr.x(0.5) + 14, fr.y(0.5) + 14)
    leg2 = (fr.x(-0.5) - 14, fr.y(0.5) + 14)
    parts.append(
        f'<text x="{_fmt(leg1[0])}" y="{_fmt(leg1[1])}" '
        f'transform="rotate(-29 {_fmt(leg1[0])} {_fmt(leg1[1])})">X1 &#8804;L X2</text>'
    )
    parts.append(
        f'<text x="{_fmt(leg2[0])}" y="{_fmt(leg2[1])}" text-anchor="end" '
        f'transform="rotate(29 {_fmt(leg2[0])} {_fmt(leg2[1])})">X2 &#8804;L X1</text>'
    )
    parts.append(
        f'<text x="{_fmt(fr.x(1))}" y="{_fmt(fr.y(1) - 12)}" text-anchor="middle">X1 pe, X2 pi</text>'
    )
    parts.append(
        f'<text x="{_fmt(fr.x(-1))}" y="{_fmt(fr.y(1) - 12)}" text-anchor="middle">X1 pi, X2 pe</text>'
    )
    parts.append(
        f'<text x="{_fmt(fr.x(0))}" y="{_fmt(fr.y(0) + 24)}" text-anchor="middle">X1 =st c X2</text>'
    )
    # axes
    parts.append(
        f'<line x1="{_fmt(fr.x(-1.1))}" y1="{_fmt(fr.y(0))}" x2="{_fmt(fr.x(1.1))}" '
        f'y2="{_fmt(fr.y(0))}" stroke="black"/>'
    )
    for tick in (-1.0, -0.5, 0.5, 1.0):
        parts.append(
            f'<line x1="{_fmt(fr.x(tick))}" y1="{_fmt(fr.y(0) - 4)}" '
            f'x2="{_fmt(fr.x(tick))}" y2="{_fmt(fr.y(0) + 4)}" stroke="black"/>'
        )
        parts.append(
            f'<text x="{_fmt(fr.x(tick))}" y="{_fmt(fr.y(0) + 40)}" '
            f'text-anchor="middle">{tick:g}</text>'
        )
    parts.append(
        f'<text x="{_fmt(fr.x(0.75))}" y="{_fmt(fr.y(0) + 40)}" text-anchor="middle">'
        f"G(X2) &#8722; G(X1)</text>"
    )
    parts.append(
        f'<text x="{_fmt(fr.x(0) - 20)}" y="{_fmt(fr.y(1.06))}" text-anchor="end">Distance</text>'
    )
    parts.extend(_points_layer(fr, points))
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _delta_region_svg(points: list[tuple[str, float, float]]) -> str:
    fr = _Frame(-1.15, 1.15, -0.08, 1.12)
    parts = _svg_header()
    xs = np.linspace(-1.0, 1.0, 512)
    upper = _gap_bound_arr(xs)
    lower = np.abs(xs)
    boundary = [fr.pt(x, y) for x, y in zip(xs, upper)]
    boundary += [fr.pt(x, y) for x, y in zip(xs[::-1], lower[::-1])]
    parts.append(
        f'<polygon points="{" ".join(boundary)}" fill="#e4f7d2" stroke="black" stroke-width="2"/>'
    )
    parts.append(
        f'<line x1="{_fmt(fr.x(-1.1))}" y1="{_fmt(fr.y(0))}" x2="{_fmt(fr.x(1.1))}" '
        f'y2="{_fmt(fr.y(0))}" stroke="black"/>'
    )
    parts.append(
        f'<line x1="{_fmt(fr.x(0))}" y1="{_fmt(fr.y(0))}" x2="{_fmt(fr.x(0))}" '
        f'y2="{_fmt(fr.y(1.05))}" stroke="black" stroke-dasharray="6,4"/>'
    )
    for tick in (-1.0, -0.5, 0.5, 1.0):
        parts.append(
            f'<text x="{_fmt(fr.x(tick))}" y="{_fmt(fr.y(0) + 40)}" '
            f'text-anchor="middle">{tick:g}</text>'
        )
    parts.append(
        f'<text x="{_fmt(fr.x(0.75))}" y="{_fmt(fr.y(0) + 40)}" text-anchor="middle">'
        f"G(X2) &#8722; G(X1)</text>"
    )
    parts.append(
        f'<text x="{_fmt(fr.x(0) - 20)}" y="{_fmt(fr.y(1.06))}" text-anchor="end">Distance</text>'
    )
    parts.extend(_points_layer(fr, points))
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def emit_chart(run: ComparisonRun, kind: ChartKind, path) -> Path:
    """Write a self-contained, byte-deterministic SVG for a comparison run.

    The triangle chart plots the gap-normalized index on the triangle with
    its frontier annotations; the delta chart plots the raw index inside the
    attainable region, whose boundary is sampled at 512 points.
    """
    if not run.results:
        raise NoValidRowsError("comparison run has no results")
    if kind is ChartKind.TRIANGLE:
        pts = [(r["target"], r["Istar"][0], r["Istar"][1]) for r in run.results]
        text = _triangle_svg(pts)
    else:
        pts = [(r["target"], r["I"][0], r["I"][1]) for r in run.results]
        text = _delta_region_svg(pts)
    path = Path(path)
    path.write_text(text, encoding="utf-8")
    return path


# -- synthetic survey files ---------------------------------------------------
#
# Real EU-SILC microdata are license-restricted, so workflows are exercised
# on generated files instead: a two-knob GB2 subfamily (p = 1, q = 3 fixed)
# is calibrated so the curve hits a target Gini, then scaled to a target
# weighted mean.  Weights play the role of household cross-sectional survey
# weights.


def calibrate_gb2(gini_target: float, tol: float = 1e-7) -> gb2.Gb2Params:
    """Unit-mean GB2 with p=1, q=3 whose Gini matches the target (bisection)."""
    if not 0.02 <= gini_target <= 0.95:
        raise NoValidRowsError(f"calibration supports Gini in [0.02, 0.95], got {gini_target}")
    lo, hi = 0.34, 400.0  # Gini is decreasing in the shape a on this range
    for _ in range(200):
        mid = math.sqrt(lo * hi)
        g = curve_gini(gb2.lorenz(gb2.unit_mean_params(mid, 1.0, 3.0)))
        if abs(g - gini_target) < tol:
            break
        if g > gini_target:
            lo = mid
        else:
            hi = mid
    return gb2.unit_mean_params(mid, 1.0, 3.0)


def synthesize_csv(path, mean: float, gini_target: float, rows: int, seed: int = 0) -> Path:
    """Write a synthetic income file hitting the target mean and Gini.

    Incomes are the calibrated model's quantiles at the midpoints of the
    cumulative weight shares, so the weighted empirical curve reproduces the
    calibrated curve up to O(1/rows) without sampling noise; a final
    rescaling pins the weighted mean exactly.  Weights are seeded uniforms
    on [0.5, 1.5].
    """
    g = calibrate_gb2(gini_target)
    rng = np.random.default_rng(seed)
    w = rng.uniform(0.5, 1.5, size=rows)
    cum = np.cumsum(w)
    mids = (cum - 0.5 * w) / cum[-1]
    v = gb2.quantile(g, mids)
    v *= mean / (np.sum(w * v) / np.sum(w))
    path = Path(path)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["household", "income", "weight"])
        for i, (vi, wi) in enumerate(zip(v, w)):
            writer.writerow([i + 1, f"{vi:.6f}", f"{wi:.8f}"])
    return path
