"""Randomized verification campaigns, tightness statistics, and 1-D
counterexample search for the conditional weighted-endpoint chain.

A campaign draws, per trial, a well-conditioned random simplex, a random
convex function, subsimplex parameters, 1-D companion instances for the
interval chains, and evaluates every selected chain, sharing each ground
truth across the chains that need it.  Trials derive child seeds from the
master seed through a counter-based splittable scheme
(``numpy.random.SeedSequence`` with the trial index as spawn key), so the
campaign is deterministic in the master seed, trials are independent, and
aggregation order does not matter.

Failures are recorded as fully self-contained descriptors (simplex,
function, chain parameters, ground-truth recipe) and
:func:`replay_failure` re-runs one descriptor bit-for-bit.

Wall time is kept on the in-memory result only; the serialized result is a
pure function of the configuration, so rerunning a campaign writes a
byte-identical file.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .chains import (
    CHAIN_NAMES,
    ChainReport,
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
from .errors import (
    ConditionNotViolatedError,
    DegenerateSimplexError,
    MissingBaselineError,
)
from .funcs import KINDS, ConvexFunction, random_convex
from .geometry import Simplex
from .quadrature import EXACT_KINDS, integrate_exact, integrate_mc
from .serialize import dumps
from .tolerances import COND_LIMIT, TOL_CHAIN

__all__ = [
    "CampaignConfig",
    "CampaignResult",
    "default_config",
    "random_simplex",
    "replay_failure",
    "run_campaign",
    "search_cor3_counterexample",
    "slack_histograms_csv",
    "tightness_ratio",
    "tightness_table",
]

#: Term indices (mean, refined upper, classical upper) per chain that carries
#: a refinement of a classical upper bound.
TIGHTNESS_TRIPLES: dict[str, tuple[int, int, int]] = {
    "thm2": (0, 1, 2),
    "thm3": (2, 3, 4),
    "thm5": (0, 1, 2),
    "cor2": (2, 3, 4),
}

_DEFAULT_SCALES = (0.2, 0.4, 0.6, 0.8, 1.0)


# ---------------------------------------------------------------------------
# configuration / result containers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CampaignConfig:
    """Campaign parameters.

    ``trials_per_theorem`` is the total number of randomized trials; every
    selected chain is evaluated on every trial (the chain named ``thm3``
    additionally sweeps all subsimplex vertex indices within a trial), and
    trial dimensions cycle round-robin through ``dimensions``.  The interval
    chains (``cor2``, ``cor3``) always run on a per-trial random 1-D
    instance, so they too see exactly ``trials_per_theorem`` cases.
    """

    dimensions: tuple[int, ...] = tuple(range(1, 9))
    trials_per_theorem: int = 10_000
    mc_samples: int = 100_000
    master_seed: int = 20260810
    theorems: tuple[str, ...] = CHAIN_NAMES
    subsimplex_scales: tuple[float, ...] = _DEFAULT_SCALES
    function_kinds: tuple[str, ...] = KINDS

    def validate(self) -> None:
        if not self.dimensions or any(d < 1 for d in self.dimensions):
            raise ValueError("dimensions must be a nonempty list of integers >= 1")
        if self.trials_per_theorem < 1:
            raise ValueError("trials_per_theorem must be >= 1")
        if self.mc_samples < 2:
            raise ValueError("mc_samples must be >= 2")
        if not self.theorems:
            raise ValueError("theorems must be nonempty")
        for name in self.theorems:
            if name not in CHAIN_NAMES:
                raise ValueError(f"unknown theorem name {name!r}")
        if len(set(self.theorems)) != len(self.theorems):
            raise ValueError("theorems contains duplicates")
        if not self.subsimplex_scales or any(
            not 0.0 < t <= 1.0 for t in self.subsimplex_scales
        ):
            raise ValueError("subsimplex_scales must lie in (0, 1]")
        for kind in self.function_kinds:
            if kind not in KINDS:
                raise ValueError(f"unknown function kind {kind!r}")
        if not self.function_kinds:
            raise ValueError("function_kinds must be nonempty")

    def to_json_dict(self) -> dict:
        return {
            "dimensions": list(self.dimensions),
            "trials_per_theorem": self.trials_per_theorem,
            "mc_samples": self.mc_samples,
            "master_seed": self.master_seed,
            "theorems": list(self.theorems),
            "subsimplex_scales": list(self.subsimplex_scales),
            "function_kinds": list(self.function_kinds),
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "CampaignConfig":
        known = {f.name for f in cls.__dataclass_fields__.values()}  # type: ignore[attr-defined]
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        kwargs: dict = {}
        for key, value in data.items():
            if key in ("dimensions", "theorems", "subsimplex_scales", "function_kinds"):
                kwargs[key] = tuple(value)
            else:
                kwargs[key] = int(value)
        cfg = cls(**kwargs)
        cfg.validate()
        return cfg


def default_config() -> CampaignConfig:
    """The bundled full-suite configuration."""
    return CampaignConfig()


@dataclass
class CampaignResult:
    """Aggregated campaign outcome.

    ``per_theorem`` maps chain name to a JSON-ready stats dict (counts,
    per-position slack histograms, tightness-ratio summary).  ``failures``
    holds replayable descriptors; it is empty iff every verdict passed.
    ``wall_time_seconds`` is in-memory only and never serialized.
    """

    config: CampaignConfig
    trials: int
    per_theorem: dict[str, dict]
    failures: list[dict] = field(default_factory=list)
    wall_time_seconds: float = 0.0

    @property
    def all_passed(self) -> bool:
        return not self.failures

    def to_json_dict(self) -> dict:
        return {
            "config": self.config.to_json_dict(),
            "trials": self.trials,
            "per_theorem": self.per_theorem,
            "failures": self.failures,
        }

    def to_json(self, *, indent: int | None = 2) -> str:
        return dumps(self.to_json_dict(), indent=indent)


# ---------------------------------------------------------------------------
# random instance generation
# ---------------------------------------------------------------------------


def random_simplex(
    dim: int,
    rng: np.random.Generator,
    *,
    cond_limit: float = COND_LIMIT,
    max_tries: int = 200,
) -> Simplex:
    """Standard-normal random simplex, filtered to condition number <= limit.

    Near-degenerate simplices probe round-off, not the inequalities, so the
    harness rejects them.
    """
    for _ in range(max_tries):
        V = rng.standard_normal((dim + 1, dim))
        try:
            s = Simplex(V)
        except DegenerateSimplexError:
            continue
        if np.linalg.cond(V[1:] - V[0]) <= cond_limit:
            return s
    raise RuntimeError(
        f"no well-conditioned simplex of dimension {dim} in {max_tries} tries"
    )


def _draw_seed(rng: np.random.Generator) -> int:
    return int(rng.integers(0, 2**63))


@dataclass
class _Trial:
    index: int
    dim: int
    simplex: Simplex
    func: ConvexFunction
    point: np.ndarray
    t_scale: float
    sub_homothety: Simplex
    sub_centered: Simplex
    mix_points: np.ndarray
    mix_betas: np.ndarray
    cor2_a: float
    cor2_b: float
    cor2_lam: float
    cor2_func: ConvexFunction
    cor3_p: float
    cor3_q: float
    cor3_a: float
    cor3_b: float
    cor3_y: float
    cor3_func: ConvexFunction
    seed_parent: int
    seed_sub: int
    seed_cor2: int
    seed_cor3: int


def _build_trial(cfg: CampaignConfig, index: int) -> _Trial:
    """Deterministically generate one trial from the master seed.

    The draw order below is part of the determinism contract: simplex
    (with retries), function seed, subsimplex scale, interior point, mixture
    size/weights/points, cor2 interval + split + function seed, cor3
    parameters + function seed, then the four ground-truth seeds.
    """
    dim = cfg.dimensions[index % len(cfg.dimensions)]
    kind = cfg.function_kinds[index % len(cfg.function_kinds)]
    rng = np.random.default_rng(
        np.random.SeedSequence(entropy=cfg.master_seed, spawn_key=(index,))
    )
    s = random_simplex(dim, rng)
    f = random_convex(dim, kind, _draw_seed(rng), simplex=s)
    t_scale = float(cfg.subsimplex_scales[int(rng.integers(len(cfg.subsimplex_scales)))])
    point = rng.dirichlet(np.full(dim + 1, 2.0)) @ s.vertices
    sub_homothety = s.homothety_about_centroid(t_scale)
    sub_centered = s.centered_subsimplex(point, t_scale * s.max_centered_scale(point))

    # Mixture points averaging to the centroid: shift random points so the
    # beta-mixture hits the centroid, then shrink toward it until all points
    # are strictly interior.
    m = int(rng.integers(2, 5))
    betas = rng.dirichlet(np.full(m, 2.0))
    raw_w = rng.standard_exponential((m, dim + 1))
    raw_w /= raw_w.sum(axis=1, keepdims=True)
    shifted = raw_w @ s.vertices
    shifted = shifted + (s.centroid - betas @ shifted)
    w_shift = s.solve_weights(shifted)
    base = 1.0 / (dim + 1)
    w_min = float(w_shift.min())
    gamma = 1.0 if w_min >= 0.0 else min(1.0, 0.9 * base / (base - w_min))
    mix_points = s.centroid + gamma * (shifted - s.centroid)

    cor2_a = float(rng.normal(0.0, 1.0))
    cor2_b = cor2_a + 0.3 + float(rng.exponential(1.0))
    cor2_lam = float(rng.uniform(0.0, 1.0))
    cor2_func = random_convex(
        1, kind, _draw_seed(rng), simplex=Simplex([[cor2_a], [cor2_b]])
    )

    cor3_p = float(rng.uniform(0.2, 5.0))
    cor3_q = float(rng.uniform(0.2, 5.0))
    cor3_a = float(rng.normal(0.0, 1.0))
    cor3_b = cor3_a + 0.3 + float(rng.exponential(1.0))
    threshold = (cor3_b - cor3_a) * min(cor3_p, cor3_q) / (cor3_p + cor3_q)
    cor3_y = float(rng.uniform(0.05, 1.0)) * threshold
    cor3_center = (cor3_p * cor3_a + cor3_q * cor3_b) / (cor3_p + cor3_q)
    cor3_func = random_convex(
        1,
        kind,
        _draw_seed(rng),
        simplex=Simplex([[cor3_center - cor3_y], [cor3_center + cor3_y]]),
    )

    seeds = rng.integers(0, 2**63, size=4)
    return _Trial(
        index=index,
        dim=dim,
        simplex=s,
        func=f,
        point=point,
        t_scale=t_scale,
        sub_homothety=sub_homothety,
        sub_centered=sub_centered,
        mix_points=mix_points,
        mix_betas=betas,
        cor2_a=cor2_a,
        cor2_b=cor2_b,
        cor2_lam=cor2_lam,
        cor2_func=cor2_func,
        cor3_p=cor3_p,
        cor3_q=cor3_q,
        cor3_a=cor3_a,
        cor3_b=cor3_b,
        cor3_y=cor3_y,
        cor3_func=cor3_func,
        seed_parent=int(seeds[0]),
        seed_sub=int(seeds[1]),
        seed_cor2=int(seeds[2]),
        seed_cor3=int(seeds[3]),
    )


def _gt_with_recipe(f: ConvexFunction, domain: Simplex, mc_samples: int, seed: int):
    """Ground truth per the exact-when-possible policy, plus a replay recipe."""
    if f.kind in EXACT_KINDS:
        return integrate_exact(f, domain), {"method": "exact_polynomial"}
    est = integrate_mc(f, domain, mc_samples, seed)
    return est, {"method": "monte_carlo", "samples": mc_samples, "seed": seed}


def _evaluate_trial(cfg: CampaignConfig, case: _Trial):
    """Yield (chain_name, report, descriptor_fields) for every selected chain.

    ``descriptor_fields`` is ``(function, params, gt_recipe, simplex_or_None)``,
    enough to build a replayable failure descriptor on demand.
    """
    s, f = case.simplex, case.func
    selected = set(cfg.theorems)
    results = []
    gt_s = recipe_s = None
    if selected & {"choquet", "thm2", "thm3"}:
        gt_s, recipe_s = _gt_with_recipe(f, s, cfg.mc_samples, case.seed_parent)
    gt_sub = recipe_sub = None
    if selected & {"thm4", "thm5"}:
        gt_sub, recipe_sub = _gt_with_recipe(
            f, case.sub_centered, cfg.mc_samples, case.seed_sub
        )
    for name in cfg.theorems:
        if name == "choquet":
            results.append(("choquet", choquet_chain(f, s, gt_s), (f, {}, recipe_s, s)))
        elif name == "thm2":
            report = thm2_upper(f, s, case.point, gt_s)
            params = {"point": case.point.tolist()}
            results.append(("thm2", report, (f, params, recipe_s, s)))
        elif name == "thm3":
            sub = case.sub_homothety
            for j in range(case.dim + 1):
                report = thm3_chain(f, s, sub, j, gt_s)
                params = {"subsimplex": sub.to_json_dict(), "j": j}
                results.append(("thm3", report, (f, params, recipe_s, s)))
        elif name in ("thm4", "thm5"):
            sub = case.sub_centered
            params = {"subsimplex": sub.to_json_dict()}
            if name == "thm4":
                report = thm4_chain(f, s, sub, gt_sub)
            else:
                report = thm5_upper(f, s, sub, gt_sub)
            results.append((name, report, (f, params, recipe_sub, s)))
        elif name == "thm6":
            report = thm6_chain(f, s, case.mix_points, case.mix_betas)
            params = {
                "points": case.mix_points.tolist(),
                "betas": case.mix_betas.tolist(),
            }
            results.append(("thm6", report, (f, params, None, s)))
        elif name == "cor2":
            interval = Simplex([[case.cor2_a], [case.cor2_b]])
            gt2, recipe2 = _gt_with_recipe(
                case.cor2_func, interval, cfg.mc_samples, case.seed_cor2
            )
            report = cor2_chain(case.cor2_func, case.cor2_a, case.cor2_b, case.cor2_lam, gt2)
            params = {"a": case.cor2_a, "b": case.cor2_b, "lam": case.cor2_lam}
            results.append(("cor2", report, (case.cor2_func, params, recipe2, None)))
        elif name == "cor3":
            center = (case.cor3_p * case.cor3_a + case.cor3_q * case.cor3_b) / (
                case.cor3_p + case.cor3_q
            )
            window = Simplex([[center - case.cor3_y], [center + case.cor3_y]])
            gt3, recipe3 = _gt_with_recipe(
                case.cor3_func, window, cfg.mc_samples, case.seed_cor3
            )
            report = cor3_check(
                case.cor3_p,
                case.cor3_q,
                case.cor3_a,
                case.cor3_b,
                case.cor3_y,
                case.cor3_func,
                gt3,
            )
            params = {
                "p": case.cor3_p,
                "q": case.cor3_q,
                "a": case.cor3_a,
                "b": case.cor3_b,
                "y": case.cor3_y,
            }
            results.append(("cor3", report, (case.cor3_func, params, recipe3, None)))
    return results


# ---------------------------------------------------------------------------
# aggregation
# ---------------------------------------------------------------------------


def tightness_ratio(values, triple, tolerance: float = TOL_CHAIN) -> float | None:
    """(refined - mean) / (classical - mean); None when the gap degenerates.

    The gap counts as degenerate when it does not clear ``tolerance`` (the
    report's verdict tolerance: 1e-8, or 4 std errors for Monte Carlo
    ground truth).  With that guard the ratio is at most 1: the refined
    bound never exceeds the classical one and both terms share the same
    mean estimate.
    """
    mean_idx, refined_idx, classical_idx = triple
    denom = values[classical_idx] - values[mean_idx]
    if denom <= tolerance:
        return None
    return (values[refined_idx] - values[mean_idx]) / denom


class _ChainAgg:
    def __init__(self, name: str) -> None:
        self.name = name
        self.evaluations = 0
        self.passes = 0
        self.failures = 0
        self.slack_values: list[list[float]] = []
        self.ratios: list[float] = []
        self.ratio_nulls = 0

    def record(self, report: ChainReport) -> None:
        self.evaluations += 1
        if report.passed:
            self.passes += 1
        else:
            self.failures += 1
        for pos, slack in enumerate(report.slacks):
            if pos == len(self.slack_values):
                self.slack_values.append([])
            self.slack_values[pos].append(slack)
        triple = TIGHTNESS_TRIPLES.get(self.name)
        if triple is not None:
            ratio = tightness_ratio(report.values, triple, report.tolerance_used)
            if ratio is None:
                self.ratio_nulls += 1
            else:
                self.ratios.append(ratio)

    def summary(self) -> dict:
        slacks = [
            {
                "position": pos,
                "n": len(values),
                "min": float(np.min(values)),
                "p50": float(np.median(values)),
                "max": float(np.max(values)),
            }
            for pos, values in enumerate(self.slack_values)
        ]
        data: dict = {
            "evaluations": self.evaluations,
            "passes": self.passes,
            "failures": self.failures,
            "slacks": slacks,
        }
        if self.name in TIGHTNESS_TRIPLES:
            tightness: dict = {"n": len(self.ratios), "nulls": self.ratio_nulls}
            if self.ratios:
                tightness.update(
                    min=float(np.min(self.ratios)),
                    p50=float(np.median(self.ratios)),
                    max=float(np.max(self.ratios)),
                )
            else:
                tightness.update(min=None, p50=None, max=None)
            data["tightness"] = tightness
        else:
            data["tightness"] = None
        return data


def run_campaign(cfg: CampaignConfig) -> CampaignResult:
    """Run every selected chain on every trial; failures are data, not errors."""
    cfg.validate()
    start = time.perf_counter()
    aggs = {name: _ChainAgg(name) for name in cfg.theorems}
    failures: list[dict] = []
    for index in range(cfg.trials_per_theorem):
        case = _build_trial(cfg, index)
        for name, report, (func, params, gt_recipe, simplex) in _evaluate_trial(
            cfg, case
        ):
            aggs[name].record(report)
            if not report.passed:
                descriptor = {
                    "chain": name,
                    "trial": case.index,
                    "dimension": case.dim,
                    "function": func.to_json_dict(),
                    "params": params,
                    "ground_truth": gt_recipe,
                    "verdict": report.verdict,
                    "slacks": list(report.slacks),
                    "tolerance": report.tolerance_used,
                }
                if simplex is not None:
                    descriptor["simplex"] = simplex.to_json_dict()
                failures.append(descriptor)
    per_theorem = {name: aggs[name].summary() for name in cfg.theorems}
    return CampaignResult(
        config=cfg,
        trials=cfg.trials_per_theorem,
        per_theorem=per_theorem,
        failures=failures,
        wall_time_seconds=time.perf_counter() - start,
    )


def replay_failure(descriptor: dict, mc_samples: int | None = None) -> ChainReport:
    """Re-run one failure (or witness) descriptor, reproducing it exactly.

    The descriptor is self-contained; replaying with the recorded seeds and
    sample counts reproduces the verdict and slacks bit-for-bit.
    """
    name = descriptor["chain"]
    func = ConvexFunction.from_json_dict(descriptor["function"])
    params = descriptor["params"]
    recipe = descriptor.get("ground_truth")

    def gt_for(domain: Simplex):
        if recipe is None:
            return None
        if recipe["method"] == "exact_polynomial":
            return integrate_exact(func, domain)
        samples = int(recipe["samples"] if mc_samples is None else mc_samples)
        return integrate_mc(func, domain, samples, int(recipe["seed"]))

    if name in ("choquet", "thm2", "thm3", "thm4", "thm5", "thm6"):
        s = Simplex.from_json_dict(descriptor["simplex"])
        if name == "choquet":
            return choquet_chain(func, s, gt_for(s))
        if name == "thm2":
            return thm2_upper(func, s, np.asarray(params["point"], float), gt_for(s))
        if name == "thm3":
            sub = Simplex.from_json_dict(params["subsimplex"])
            return thm3_chain(func, s, sub, int(params["j"]), gt_for(s))
        if name == "thm4":
            sub = Simplex.from_json_dict(params["subsimplex"])
            return thm4_chain(func, s, sub, gt_for(sub))
        if name == "thm5":
            sub = Simplex.from_json_dict(params["subsimplex"])
            return thm5_upper(func, s, sub, gt_for(sub))
        return thm6_chain(func, s, np.asarray(params["points"], float),
                          np.asarray(params["betas"], float))
    if name == "cor2":
        a, b = float(params["a"]), float(params["b"])
        return cor2_chain(func, a, b, float(params["lam"]), gt_for(Simplex([[a], [b]])))
    if name == "cor3":
        p, q = float(params["p"]), float(params["q"])
        a, b, y = float(params["a"]), float(params["b"]), float(params["y"])
        center = (p * a + q * b) / (p + q)
        window = Simplex([[center - y], [center + y]])
        return cor3_check(p, q, a, b, y, func, gt_for(window))
    raise ValueError(f"unknown chain name {name!r}")


# ---------------------------------------------------------------------------
# analytics
# ---------------------------------------------------------------------------


def tightness_table(result: CampaignResult) -> list[dict]:
    """Per-chain distribution of (refined upper - mean)/(classical - mean).

    Ratios in [0, 1] quantify how much a refined bound improves on the
    classical one; degenerate gaps (affine functions) are counted as nulls.
    Requires the baseline ``choquet`` chain plus at least one refined chain
    in the result.
    """
    per = result.per_theorem
    if "choquet" not in per:
        raise MissingBaselineError("result lacks the choquet baseline chain")
    rows = [
        {"theorem": name, **per[name]["tightness"]}
        for name in CHAIN_NAMES
        if name in per and per[name].get("tightness") is not None
    ]
    if not rows:
        raise MissingBaselineError("result contains no refined chain")
    return rows


def slack_histograms_csv(result: CampaignResult) -> str:
    """Slack histograms as CSV: theorem, slack_index, min, p50, max, n."""
    lines = ["theorem,slack_index,min,p50,max,n"]
    for name in CHAIN_NAMES:
        if name not in result.per_theorem:
            continue
        for row in result.per_theorem[name]["slacks"]:
            lines.append(
                f"{name},{row['position']},{row['min']:.17g},"
                f"{row['p50']:.17g},{row['max']:.17g},{row['n']}"
            )
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# counterexample search (necessity direction of the cor3 condition)
# ---------------------------------------------------------------------------


def _hinge_window_moments(
    orientation: int, kink: float, lo: float, hi: float
) -> tuple[float, float]:
    """Exact first and second moments of max(0, orientation*(x - kink)) on [lo, hi]."""
    width = hi - lo
    if orientation > 0:
        start = max(lo, kink)
        if start >= hi:
            return 0.0, 0.0
        m1 = ((hi - kink) ** 2 - (start - kink) ** 2) / (2.0 * width)
        m2 = ((hi - kink) ** 3 - (start - kink) ** 3) / (3.0 * width)
    else:
        stop = min(hi, kink)
        if stop <= lo:
            return 0.0, 0.0
        m1 = ((kink - lo) ** 2 - (kink - stop) ** 2) / (2.0 * width)
        m2 = ((kink - lo) ** 3 - (kink - stop) ** 3) / (3.0 * width)
    return m1, m2


def _hinge_exact_slack(
    orientation: int, kink: float, p: float, q: float, a: float, b: float,
    lo: float, hi: float,
) -> float:
    """Upper-bound slack of the cor3 chain for a unit hinge, exactly."""
    f_a = max(0.0, orientation * (a - kink))
    f_b = max(0.0, orientation * (b - kink))
    bound = (p * f_a + q * f_b) / (p + q)
    return bound - _hinge_window_moments(orientation, kink, lo, hi)[0]


def _certifiable_margin(
    orientation: int, kink: float, p: float, q: float, a: float, b: float,
    lo: float, hi: float, mc_samples: int,
) -> float:
    """How far a candidate's violation clears its own verification tolerance.

    The chain verdict uses tolerance 4 * std_error, so a violation only
    certifies when it exceeds four exact standard deviations of the hinge
    over the window divided by sqrt(samples).  Maximizing this margin (not
    the raw violation) steers the search away from near-affine hinges whose
    violation drowns in their own Monte Carlo noise.
    """
    m1, m2 = _hinge_window_moments(orientation, kink, lo, hi)
    f_a = max(0.0, orientation * (a - kink))
    f_b = max(0.0, orientation * (b - kink))
    slack = (p * f_a + q * f_b) / (p + q) - m1
    sigma = np.sqrt(max(m2 - m1 * m1, 0.0))
    return -slack - 4.0 * sigma / np.sqrt(mc_samples)


def search_cor3_counterexample(
    p: float,
    q: float,
    a: float,
    b: float,
    y: float,
    budget: int,
    seed: int,
    *,
    mc_samples: int = 100_000,
) -> dict | None:
    """Search hinge functions violating the cor3 chain when the condition fails.

    Candidates are unit hinges parameterized by orientation and kink
    location, scored by exact window moments (grid sweep, then seeded random
    refinement around the best kink) through :func:`_certifiable_margin`.
    ``budget`` caps the number of candidates examined.  The best candidate is
    then verified through :func:`cor3_check` with Monte Carlo ground truth; a
    witness descriptor (replayable via :func:`replay_failure`) is returned
    only if the verified slack is negative beyond the report tolerance.
    Returns None when the budget is exhausted without a certifiable
    violation.
    """
    p, q, a, b, y = float(p), float(q), float(a), float(b), float(y)
    if p <= 0.0 or q <= 0.0 or y <= 0.0:
        raise ValueError("p, q and y must be positive")
    if not a <= b:
        raise ValueError("need a <= b")
    if budget < 1:
        raise ValueError("budget must be >= 1")
    if cor3_condition_holds(p, q, a, b, y):
        raise ConditionNotViolatedError(
            "window-width condition holds; the chain is valid for every convex f"
        )
    center = (p * a + q * b) / (p + q)
    lo, hi = center - y, center + y
    rng = np.random.default_rng(seed)

    examined = 0
    best: tuple[float, int, float] | None = None  # (margin, orientation, kink)
    span_lo = min(lo, a)
    span_hi = max(hi, b)
    grid_size = max(1, min(budget // 2, 512))
    grid = np.linspace(span_lo, span_hi, grid_size)
    for orientation in (1, -1):
        for kink in grid:
            if examined >= budget:
                break
            examined += 1
            margin = _certifiable_margin(
                orientation, float(kink), p, q, a, b, lo, hi, mc_samples
            )
            if best is None or margin > best[0]:
                best = (margin, orientation, float(kink))
    # Random refinement around the best kink found so far.
    radius = (span_hi - span_lo) / max(grid_size - 1, 1)
    while examined < budget and best is not None:
        examined += 1
        kink = best[2] + radius * float(rng.standard_normal())
        margin = _certifiable_margin(best[1], kink, p, q, a, b, lo, hi, mc_samples)
        if margin > best[0]:
            best = (margin, best[1], kink)
            radius *= 0.7

    if best is None or best[0] <= 0.0:
        return None
    _, orientation, kink = best
    func = ConvexFunction(
        kind="hinge_distance",
        params={"slope": [float(orientation)], "threshold": float(orientation) * kink},
        label=f"hinge-witness-{orientation:+d}",
    )
    gt_seed = _draw_seed(rng)
    window = Simplex([[lo], [hi]])
    gt = integrate_mc(func, window, mc_samples, gt_seed)
    report = cor3_check(p, q, a, b, y, func, gt)
    worst = min(report.slacks)
    if worst >= -report.tolerance_used:
        return None
    return {
        "chain": "cor3",
        "dimension": 1,
        "function": func.to_json_dict(),
        "params": {"p": p, "q": q, "a": a, "b": b, "y": y},
        "ground_truth": {"method": "monte_carlo", "samples": mc_samples, "seed": gt_seed},
        "verdict": report.verdict,
        "slacks": list(report.slacks),
        "tolerance": report.tolerance_used,
        "kink": kink,
        "orientation": orientation,
        "slack": worst,
        "exact_slack": _hinge_exact_slack(orientation, kink, p, q, a, b, lo, hi),
        "candidates_examined": examined,
    }
