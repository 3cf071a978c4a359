"""Command-line front end.

Subcommands::

    hh bounds SIMPLEX.json FUNCTION.json [--theorem NAME ...] [flags]
    hh campaign [--config CONFIG.json] [--out RESULT.json] [flags]
    hh cor3-search --p P --q Q --a A --b B --y Y [--budget N] [--seed N]
    hh sample SIMPLEX.json [--count N] [--seed N]

Standard output carries only JSON (one object per line for multi-report
output); diagnostics go to standard error.  Exit codes: 0 on success with
all verdicts passing, 1 when any inequality verdict fails, 2 on usage,
parse, or I/O errors.  The environment variable ``HH_SEED`` provides the
default seed; an explicit ``--seed`` flag wins.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys

import numpy as np

from .campaign import (
    CampaignConfig,
    default_config,
    run_campaign,
    search_cor3_counterexample,
    slack_histograms_csv,
)
from .chains import (
    CHAIN_NAMES,
    choquet_chain,
    cor2_chain,
    cor3_check,
    cor3_condition_holds,
    thm2_upper,
    thm3_chain,
    thm4_chain,
    thm5_upper,
    thm6_chain,
)
from .errors import ConditionNotViolatedError, HHBoundsError
from .funcs import ConvexFunction
from .geometry import Simplex
from .quadrature import EXACT_KINDS, integrate_exact, integrate_mc
from .serialize import dumps, read_json, write_json

_ONE_D_CHAINS = ("cor2", "cor3")


def _default_seed(value: int | None) -> int:
    if value is not None:
        return value
    env = os.environ.get("HH_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise ValueError(f"HH_SEED must be an integer, got {env!r}") from exc
    return 0


def _load_simplex(path: str) -> Simplex:
    return Simplex.from_json_dict(read_json(path))


def _load_function(path: str) -> ConvexFunction:
    return ConvexFunction.from_json_dict(read_json(path))


def _parse_point(text: str, s: Simplex) -> np.ndarray:
    if text == "centroid":
        return s.centroid
    coords = [float(part) for part in text.split(",")]
    return np.asarray(coords, dtype=float)


def _ground_truth(f: ConvexFunction, domain: Simplex, samples: int, seed: int):
    if f.kind in EXACT_KINDS:
        return integrate_exact(f, domain)
    return integrate_mc(f, domain, samples, seed)


def _chain_seed(base_seed: int, slot: int) -> int:
    ss = np.random.SeedSequence(entropy=base_seed, spawn_key=(slot,))
    return int(ss.generate_state(1, dtype=np.uint64)[0] >> 1)


def _emit_lines(lines: list[str], out_path: str | None) -> None:
    text = "\n".join(lines) + "\n"
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8") as handle:
            handle.write(text)


# ---------------------------------------------------------------------------
# subcommand: bounds
# ---------------------------------------------------------------------------


def _cmd_bounds(args: argparse.Namespace) -> int:
    s = _load_simplex(args.simplex)
    f = _load_function(args.function)
    if f.dim != s.dimension:
        raise ValueError(
            f"function dimension {f.dim} does not match simplex {s.dimension}"
        )
    seed = _default_seed(args.seed)
    samples = args.mc_samples
    theorems = args.theorem or ["choquet"]
    n = s.dimension
    if n != 1:
        bad = [t for t in theorems if t in _ONE_D_CHAINS]
        if bad:
            raise ValueError(f"chains {bad} require a 1-D simplex")

    reports = []
    gt_parent = None

    def parent_gt():
        nonlocal gt_parent
        if gt_parent is None:
            gt_parent = _ground_truth(f, s, samples, _chain_seed(seed, 0))
        return gt_parent

    for name in theorems:
        if name == "choquet":
            reports.append(choquet_chain(f, s, parent_gt()))
        elif name == "thm2":
            point = _parse_point(args.point, s)
            reports.append(thm2_upper(f, s, point, parent_gt()))
        elif name == "thm3":
            sub = s.homothety_about_centroid(args.t)
            reports.append(thm3_chain(f, s, sub, args.j, parent_gt()))
        elif name in ("thm4", "thm5"):
            point = _parse_point(args.point, s)
            sub = s.centered_subsimplex(point, args.t * s.max_centered_scale(point))
            gt_sub = _ground_truth(f, sub, samples, _chain_seed(seed, 1))
            op = thm4_chain if name == "thm4" else thm5_upper
            reports.append(op(f, s, sub, gt_sub))
        elif name == "thm6":
            # Default mixture instance: facet midpoints with uniform weights,
            # whose average is always the centroid.
            V = s.vertices
            midpoints = (V.sum(axis=0) - V) / n
            betas = np.full(n + 1, 1.0 / (n + 1))
            reports.append(thm6_chain(f, s, midpoints, betas))
        elif name == "cor2":
            a, b = sorted(float(v[0]) for v in s.vertices)
            reports.append(cor2_chain(f, a, b, args.lam, parent_gt()))
        elif name == "cor3":
            a, b = sorted(float(v[0]) for v in s.vertices)
            y = args.cor3_y
            if y is None:
                y = 0.5 * (b - a) * min(args.cor3_p, args.cor3_q) / (
                    args.cor3_p + args.cor3_q
                )
            center = (args.cor3_p * a + args.cor3_q * b) / (args.cor3_p + args.cor3_q)
            window = Simplex([[center - y], [center + y]])
            gt_w = _ground_truth(f, window, samples, _chain_seed(seed, 2))
            reports.append(cor3_check(args.cor3_p, args.cor3_q, a, b, y, f, gt_w))
        else:  # unreachable: argparse restricts choices
            raise ValueError(f"unknown theorem {name!r}")

    _emit_lines([dumps(r.to_json_dict()) for r in reports], args.out)
    return 0 if all(r.passed for r in reports) else 1


# ---------------------------------------------------------------------------
# subcommand: campaign
# ---------------------------------------------------------------------------


def _cmd_campaign(args: argparse.Namespace) -> int:
    if args.config is None:
        cfg = default_config()
    else:
        cfg = CampaignConfig.from_json_dict(read_json(args.config))
    overrides: dict = {}
    if args.seed is not None or os.environ.get("HH_SEED") is not None:
        overrides["master_seed"] = _default_seed(args.seed)
    if args.trials is not None:
        overrides["trials_per_theorem"] = args.trials
    if args.mc_samples is not None:
        overrides["mc_samples"] = args.mc_samples
    if overrides:
        cfg = dataclasses.replace(cfg, **overrides)
    cfg.validate()

    result = run_campaign(cfg)
    payload = result.to_json_dict()
    if args.out is None:
        sys.stdout.write(dumps(payload, indent=2) + "\n")
    else:
        write_json(args.out, payload)
    if args.csv is not None:
        with open(args.csv, "w", encoding="utf-8") as handle:
            handle.write(slack_histograms_csv(result))
    print(
        f"campaign: {result.trials} trials, "
        f"{sum(v['failures'] for v in result.per_theorem.values())} failures, "
        f"{result.wall_time_seconds:.1f}s",
        file=sys.stderr,
    )
    return 0 if result.all_passed else 1


# ---------------------------------------------------------------------------
# subcommand: cor3-search
# ---------------------------------------------------------------------------


def _cmd_cor3_search(args: argparse.Namespace) -> int:
    if cor3_condition_holds(args.p, args.q, args.a, args.b, args.y):
        print(
            "window-width condition holds: the chain is valid for every convex "
            "function, nothing to search",
            file=sys.stderr,
        )
        return 2
    witness = search_cor3_counterexample(
        args.p, args.q, args.a, args.b, args.y,
        budget=args.budget, seed=_default_seed(args.seed),
        mc_samples=args.mc_samples,
    )
    if witness is None:
        sys.stdout.write(dumps({"witness": None}) + "\n")
    else:
        sys.stdout.write(dumps({"witness": witness}) + "\n")
    return 0


# ---------------------------------------------------------------------------
# subcommand: sample
# ---------------------------------------------------------------------------


def _cmd_sample(args: argparse.Namespace) -> int:
    from .quadrature import sample_uniform

    s = _load_simplex(args.simplex)
    points = sample_uniform(s, args.count, _default_seed(args.seed))
    _emit_lines([dumps(row.tolist()) for row in points], args.out)
    return 0


# ---------------------------------------------------------------------------
# parser / entry point
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hh",
        description="Bound chains for convex functions on simplices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_bounds = sub.add_parser("bounds", help="evaluate bound chains on one instance")
    p_bounds.add_argument("simplex", help="simplex descriptor JSON file")
    p_bounds.add_argument("function", help="convex function descriptor JSON file")
    p_bounds.add_argument(
        "--theorem", action="append", choices=CHAIN_NAMES, metavar="NAME",
        help="chain to evaluate (repeatable); default: choquet",
    )
    p_bounds.add_argument(
        "--point", default="centroid",
        help="'centroid' or comma-separated coordinates (thm2 pin point and "
        "thm4/thm5 subsimplex barycenter)",
    )
    p_bounds.add_argument(
        "--t", type=float, default=0.5,
        help="subsimplex scale in (0,1]: homothety factor for thm3, fraction "
        "of the largest admissible centered scale for thm4/thm5",
    )
    p_bounds.add_argument(
        "--j", type=int, default=0, help="thm3 subsimplex vertex index (0-based)"
    )
    p_bounds.add_argument(
        "--lam", type=float, default=0.5, help="cor2 split parameter in [0,1]"
    )
    p_bounds.add_argument("--cor3-p", type=float, default=1.0, help="cor3 weight p")
    p_bounds.add_argument("--cor3-q", type=float, default=1.0, help="cor3 weight q")
    p_bounds.add_argument(
        "--cor3-y", type=float, default=None,
        help="cor3 window half-width; default: half the admissible maximum",
    )
    p_bounds.add_argument("--seed", type=int, default=None)
    p_bounds.add_argument("--mc-samples", type=int, default=100_000)
    p_bounds.add_argument("--out", default=None, help="output path (default stdout)")

    p_campaign = sub.add_parser("campaign", help="run a randomized campaign")
    p_campaign.add_argument(
        "--config", default=None, help="campaign config JSON (default: built-in)"
    )
    p_campaign.add_argument("--out", default=None, help="result JSON path")
    p_campaign.add_argument("--csv", default=None, help="slack histogram CSV path")
    p_campaign.add_argument("--seed", type=int, default=None, help="master seed override")
    p_campaign.add_argument("--trials", type=int, default=None)
    p_campaign.add_argument("--mc-samples", type=int, default=None)

    p_search = sub.add_parser(
        "cor3-search", help="search for a convex function violating the cor3 chain"
    )
    p_search.add_argument("--p", type=float, required=True)
    p_search.add_argument("--q", type=float, required=True)
    p_search.add_argument("--a", type=float, required=True)
    p_search.add_argument("--b", type=float, required=True)
    p_search.add_argument("--y", type=float, required=True)
    p_search.add_argument("--budget", type=int, default=10_000)
    p_search.add_argument("--seed", type=int, default=None)
    p_search.add_argument("--mc-samples", type=int, default=100_000)

    p_sample = sub.add_parser("sample", help="draw uniform points from a simplex")
    p_sample.add_argument("simplex", help="simplex descriptor JSON file")
    p_sample.add_argument("--count", type=int, default=100)
    p_sample.add_argument("--seed", type=int, default=None)
    p_sample.add_argument("--out", default=None, help="output path (default stdout)")

    return parser


_HANDLERS = {
    "bounds": _cmd_bounds,
    "campaign": _cmd_campaign,
    "cor3-search": _cmd_cor3_search,
    "sample": _cmd_sample,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _HANDLERS[args.command](args)
    except ConditionNotViolatedError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (
        HHBoundsError,
        ValueError,
        KeyError,
        IndexError,
        OSError,
        json.JSONDecodeError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
