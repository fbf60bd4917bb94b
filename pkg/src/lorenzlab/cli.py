"""Command-line interface.

Exit codes: 0 success, 1 domain error (bad data, bad parameters, missing
file), 2 usage error (argparse).  The environment variable LORENZ_LAB_SEED
supplies the default seed for the simulation commands.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import asymptotics, gb2
from .app import ChartKind, emit_chart, ingest_csv, run_comparison, run_from_json, run_to_json
from .curves import gini as curve_gini
from .empirical import empirical_lorenz, weighted_mean
from .errors import LorenzError
from .extremal import brute_force_max, extreme_lower, extreme_upper, max_distance
from .indices import index_raw, index_record

__all__ = ["main"]


def _default_seed() -> int:
    return int(os.environ.get("LORENZ_LAB_SEED", "0"))


def _add_data_flags(p: argparse.ArgumentParser):
    p.add_argument("--income-col", default="income", help="income column name (default: income)")
    p.add_argument("--weight-col", default=None, help="survey-weight column name (default: unit weights)")
    p.add_argument("--tol", type=float, default=None, help="override comparison tolerance")
    p.add_argument("--json", action="store_true", help="emit machine-readable JSON")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lorenzlab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gini", help="Gini index of one income file")
    p.add_argument("file")
    _add_data_flags(p)

    p = sub.add_parser("index", help="bidimensional index of two income files")
    p.add_argument("file1")
    p.add_argument("file2")
    _add_data_flags(p)

    p = sub.add_parser("compare", help="index a baseline file against several targets")
    p.add_argument("--baseline", required=True)
    p.add_argument("--targets", required=True, nargs="+")
    p.add_argument("-o", "--output", default=None, help="write the run as JSON here")
    _add_data_flags(p)

    p = sub.add_parser("simulate", help="Monte Carlo of the plug-in estimator for a model preset")
    p.add_argument("--model", type=int, required=True, choices=range(1, 6))
    p.add_argument("--n", type=int, required=True, help="sample size per replication")
    p.add_argument("--reps", type=int, required=True)
    p.add_argument("--seed", type=int, default=None)

    p = sub.add_parser("limit", help="draws from the simulated limit distribution")
    p.add_argument("--model", type=int, required=True, choices=range(1, 6))
    p.add_argument("--draws", type=int, required=True)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--grid", type=int, default=asymptotics.DEFAULT_GRID)
    p.add_argument("--json", action="store_true", help="print diagnostics JSON instead of CSV")

    p = sub.add_parser("extremal", help="maximal distance between two Gini classes")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--oracle", type=int, default=None, metavar="GRID",
                   help="also run the brute-force oracle at this grid size")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("chart", help="render a comparison run to SVG")
    p.add_argument("run", help="run JSON produced by `compare -o`")
    p.add_argument("--kind", choices=["triangle", "delta"], default="triangle")
    p.add_argument("-o", "--output", required=True)

    return parser


def _cmd_gini(args) -> int:
    ds = ingest_csv(args.file, args.income_col, args.weight_col)
    g = curve_gini(empirical_lorenz(ds.sample))
    if args.json:
        print(json.dumps({
            "label": ds.label,
            "gini": g,
            "mean": weighted_mean(ds.sample),
            "n": ds.sample.size,
            "dropped_negative": ds.dropped_negative,
            "dropped_missing": ds.dropped_missing,
        }, sort_keys=True))
    else:
        print(f"{ds.label}: gini = {g:.6f}")
    return 0


def _cmd_index(args) -> int:
    d1 = ingest_csv(args.file1, args.income_col, args.weight_col)
    d2 = ingest_csv(args.file2, args.income_col, args.weight_col)
    run = run_comparison(d1, [d2])
    rec = dict(run.results[0])
    if args.tol is not None:
        rec = dict(index_record(
            empirical_lorenz(d1.sample), empirical_lorenz(d2.sample), tol=args.tol
        ), **{k: rec[k] for k in ("baseline", "target", "n1", "n2", "mean1", "mean2")})
        rec["tol"] = args.tol
    if args.json:
        print(json.dumps(rec, sort_keys=True))
    else:
        print(f"{rec['baseline']} vs {rec['target']}:")
        print(f"  gini1 = {rec['gini1']:.6f}  gini2 = {rec['gini2']:.6f}  dL = {rec['dL']:.6f}")
        print(f"  I = ({rec['I'][0]:.6f}, {rec['I'][1]:.6f})")
        print(f"  Istar = ({rec['Istar'][0]:.6f}, {rec['Istar'][1]:.6f})")
        print(f"  Iupper = ({rec['Iupper'][0]:.6f}, {rec['Iupper'][1]:.6f})")
        print(f"  class = {rec['class']}")
    return 0


def _cmd_compare(args) -> int:
    baseline = ingest_csv(args.baseline, args.income_col, args.weight_col)
    targets = [ingest_csv(t, args.income_col, args.weight_col) for t in args.targets]
    run = run_comparison(baseline, targets)
    text = run_to_json(run)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    if args.json:
        print(text)
    elif not args.output:
        for r in run.results:
            print(
                f"{r['baseline']} vs {r['target']}: I = ({r['I'][0]:+.4f}, {r['I'][1]:.4f})"
                f"  class = {r['class']}"
            )
    return 0


def _cmd_simulate(args) -> int:
    g1, g2, _ = gb2.model_preset(args.model)
    seed = args.seed if args.seed is not None else _default_seed()
    stats = asymptotics.monte_carlo_estimator(g1, g2, args.n, args.reps, seed)
    print("rep,comp1,comp2")
    for i, (c1, c2) in enumerate(stats):
        print(f"{i},{c1!r},{c2!r}")
    return 0


def _cmd_limit(args) -> int:
    g1, g2, _ = gb2.model_preset(args.model)
    seed = args.seed if args.seed is not None else _default_seed()
    draws = asymptotics.limit_draws(g1, g2, seed=seed, draws=args.draws, m=args.grid)
    if args.json:
        v1, _ = asymptotics._model_grids(g1, args.grid)
        v2, _ = asymptotics._model_grids(g2, args.grid)
        band = float(np.mean(np.abs(v1 - v2) <= asymptotics.DEFAULT_ZERO_TOL))
        payload = {
            "model": args.model,
            "draws": args.draws,
            "grid": args.grid,
            "zero_band_fraction": band,
            "diagnostics": asymptotics.normality_diagnostics(draws),
        }
        print(json.dumps(payload, sort_keys=True))
    else:
        print("draw,comp1,comp2")
        for i, d in enumerate(draws):
            print(f"{i},{d.comp1!r},{d.comp2!r}")
    return 0


def _spec_text(spec) -> str:
    if spec.family == "L":
        return f"L(a={spec.a:g}, x1={spec.x1:g})"
    if spec.family == "M":
        return f"M(a={spec.a:g}, x2={spec.x2:g})"
    return f"N(a={spec.a:g}, x1={spec.x1:g}, x2={spec.x2:g})"


def _cmd_extremal(args) -> int:
    value = max_distance(args.a, args.b)
    payload = {
        "a": args.a,
        "b": args.b,
        "max_distance": value,
        "extremal_pairs": [
            [f"L(a={args.a:g}, x1={args.a:g})", f"L(a={args.b:g}, x1=0)"],
            [f"L(a={args.a:g}, x1=0)", f"L(a={args.b:g}, x1={args.b:g})"],
        ],
    }
    if args.oracle is not None:
        oracle_value, (s1, s2) = brute_force_max(args.a, args.b, args.oracle)
        payload["oracle"] = {
            "grid": args.oracle,
            "value": oracle_value,
            "pair": [_spec_text(s1), _spec_text(s2)],
        }
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(f"max distance between Gini classes a={args.a:g}, b={args.b:g}: {value:.6f}")
        print("attained at (lower a, upper b) and (upper a, lower b):")
        for left, right in payload["extremal_pairs"]:
            print(f"  {left}  <->  {right}")
        if args.oracle is not None:
            o = payload["oracle"]
            print(f"oracle (grid {o['grid']}): {o['value']:.6f} at {o['pair'][0]} <-> {o['pair'][1]}")
    return 0


def _cmd_chart(args) -> int:
    with open(args.run, encoding="utf-8") as fh:
        run = run_from_json(fh.read())
    kind = ChartKind.TRIANGLE if args.kind == "triangle" else ChartKind.DELTA_REGION
    out = emit_chart(run, kind, args.output)
    print(f"wrote {out}")
    return 0


_COMMANDS = {
    "gini": _cmd_gini,
    "index": _cmd_index,
    "compare": _cmd_compare,
    "simulate": _cmd_simulate,
    "limit": _cmd_limit,
    "extremal": _cmd_extremal,
    "chart": _cmd_chart,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse reports usage errors on stderr itself
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except (LorenzError, FileNotFoundError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
