"""Seeded experiment sweeps over release fraction and subsidy, to CSV.

Three response semantics are selectable per experiment and recorded in the
output's ``mode`` column:

* ``open``   - both minimum costs range over the revealed set for everyone.
* ``gated``  - an agent can take its own action only when that action was
  released; everything else is imitation of the revealed set.
* ``anchored`` - every negatively classified agent keeps its own recommended
  action and the released subset controls only what becomes imitable. This is
  the default: it is the reading under which release breadth trades recourse
  against imitation instead of simply scaling participation.

All randomness flows from ``base_seed`` through a splitmix derivation, so any
run is replayable alone and a repeated experiment is byte-identical.
"""

from __future__ import annotations

import math
import os
import time
from dataclasses import dataclass, fields as dc_fields, replace

import numpy as np

from .costs import CostModel, pairwise_costs, random_cost_weights
from .errors import ConfigError, EmptyInputError
from .metrics import (
    METRIC_COLUMNS,
    MetricsReport,
    RUN_COLUMNS,
    aggregate,
    format_cell,
    social_cost_at,
)
from .model import LinearClassifier, TrainConfig, train_linear
from .optimizer import (
    brute_force_select,
    build_geometric_instance,
    exact_ilp_p1,
    greedy_select,
    local_search_select,
)
from .population import Population, partition, load_population, ColumnSchema
from .response import Action, ActionKind, DO_NOTHING_CUTOFF, final_action, optimal_recourse
from .reveal import draw_reveal

SIGN_SLACK = 1e-12

MODES = ("open", "gated", "anchored")
SELECTORS = ("bruteforce", "greedy", "localsearch", "ilp_p1", "random_k")


def splitmix64(value: int) -> int:
    """Deterministic 64-bit mix; one step of the splitmix sequence."""
    z = (value + 0x9E3779B97F4A7C15) & 0xFFFFFFFFFFFFFFFF
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & 0xFFFFFFFFFFFFFFFF
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & 0xFFFFFFFFFFFFFFFF
    return z ^ (z >> 31)


def derive_seed(base: int, *tags: int) -> int:
    s = base & 0xFFFFFFFFFFFFFFFF
    for t in tags:
        s = splitmix64(s ^ (t & 0xFFFFFFFFFFFFFFFF))
    return s


@dataclass(frozen=True)
class SynthSpec:
    n: int = 2000
    d: int = 2
    group_shift: float = 0.3
    class_sep: float = 0.2
    depth_spread: float = 0.7
    lateral_scale: float = 8.0
    seed: int = 0


def synth_population(spec: SynthSpec) -> Population:
    """Two label clouds separated by a margin, with a group-dependent shift.

    The signal coordinate of each agent sits at least ``class_sep`` from the
    class midline (half-normal depths beyond that), so the trained boundary
    falls inside a sparsely populated band; honest changes stop at that
    boundary while imitating an established positive means crossing the whole
    margin. The wide lateral spread keeps released boundary actions from
    saturating as imitation targets at small release fractions. Group g1 sits
    ``group_shift`` lower along the signal direction, so disparity metrics
    have something to measure.
    """
    if spec.n < 4 or spec.d < 1:
        raise ConfigError(f"synthetic spec needs n >= 4 and d >= 1, got n={spec.n}, d={spec.d}")
    rng = np.random.default_rng(spec.seed)
    labels = (rng.random(spec.n) < 0.5).astype(int)
    groups = np.where(rng.random(spec.n) < 0.5, "g0", "g1")
    # guarantee every label/group cell is inhabited
    labels[:4] = (0, 0, 1, 1)
    groups[:4] = ("g0", "g1", "g0", "g1")
    X = rng.normal(size=(spec.n, spec.d))
    depth = spec.class_sep + spec.depth_spread * np.abs(X[:, 0])
    X[:, 0] = np.where(labels == 1, depth, -depth)
    X[:, 0] -= np.where(groups == "g1", spec.group_shift, 0.0)
    if spec.d > 1:
        X[:, 1:] *= spec.lateral_scale
    return Population.from_arrays(X, labels, groups)


@dataclass(frozen=True)
class ExperimentConfig:
    dataset: str = "synthetic"            # "synthetic" or "csv"
    csv_path: str = ""
    feature_cols: tuple[str, ...] = ()
    label_col: str = "label"
    group_col: str = "group"
    synth_n: int = 2000
    synth_d: int = 2
    synth_group_shift: float = 0.3
    synth_class_sep: float = 0.2
    p: float = 0.7
    subsidies: tuple[float, ...] = (0.0, 0.2, 0.4, 0.6, 0.8, 1.0)
    provision_fractions: tuple[float, ...] = tuple(round(0.1 * i, 1) for i in range(11))
    runs: int = 100
    optimizer: str = "random_k"
    response_mode: str = "anchored"
    base_seed: int = 0
    output_dir: str = "out"
    resample_fraction: float = 0.8
    eps: float = 1e-6
    learning_rate: float = 0.1
    epochs: int = 500
    l2_penalty: float = 1e-4

    def validate(self):
        if self.dataset not in ("synthetic", "csv"):
            raise ConfigError(f"dataset: expected 'synthetic' or 'csv', got {self.dataset!r}")
        if self.dataset == "csv" and not self.csv_path:
            raise ConfigError("csv_path: required when dataset = csv")
        if not 0.0 <= self.p <= 1.0:
            raise ConfigError(f"p: must lie in [0, 1], got {self.p}")
        for name, vals in (("subsidies", self.subsidies), ("provision_fractions", self.provision_fractions)):
            if not vals:
                raise ConfigError(f"{name}: must be nonempty")
            if any(not 0.0 <= v <= 1.0 for v in vals):
                raise ConfigError(f"{name}: every value must lie in [0, 1]")
        if self.runs < 1:
            raise ConfigError(f"runs: must be >= 1, got {self.runs}")
        if self.optimizer not in SELECTORS:
            raise ConfigError(f"optimizer: expected one of {SELECTORS}, got {self.optimizer!r}")
        if self.response_mode not in MODES:
            raise ConfigError(f"response_mode: expected one of {MODES}, got {self.response_mode!r}")
        if not 0.0 < self.resample_fraction <= 1.0:
            raise ConfigError(f"resample_fraction: must lie in (0, 1], got {self.resample_fraction}")


_LIST_FIELDS = {"subsidies", "provision_fractions", "feature_cols"}
_FLOAT_FIELDS = {"p", "synth_group_shift", "synth_class_sep", "resample_fraction", "eps",
                 "learning_rate", "l2_penalty"}
_INT_FIELDS = {"synth_n", "synth_d", "runs", "base_seed", "epochs"}


def parse_config(path) -> ExperimentConfig:
    """Flat key = value file; '#' starts a comment; lists are comma-separated."""
    known = {f.name for f in dc_fields(ExperimentConfig)}
    overrides: dict = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {raw.strip()!r}")
            key, _, val = line.partition("=")
            key, val = key.strip(), val.strip()
            if key not in known:
                raise ConfigError(f"{path}:{lineno}: unknown field {key!r}")
            try:
                if key in _LIST_FIELDS:
                    parts = [v.strip() for v in val.split(",") if v.strip()]
                    overrides[key] = tuple(parts) if key == "feature_cols" else tuple(float(v) for v in parts)
                elif key in _FLOAT_FIELDS:
                    overrides[key] = float(val)
                elif key in _INT_FIELDS:
                    overrides[key] = int(val)
                else:
                    overrides[key] = val
            except ValueError:
                raise ConfigError(f"{path}:{lineno}: could not parse value for {key!r}: {val!r}")
    cfg = replace(ExperimentConfig(), **overrides)
    cfg.validate()
    return cfg


def _load_dataset(cfg: ExperimentConfig) -> Population:
    if cfg.dataset == "synthetic":
        return synth_population(SynthSpec(
            n=cfg.synth_n, d=cfg.synth_d, group_shift=cfg.synth_group_shift,
            class_sep=cfg.synth_class_sep, seed=derive_seed(cfg.base_seed, 0xDA7A),
        ))
    schema = ColumnSchema(features=tuple(cfg.feature_cols), label=cfg.label_col, group=cfg.group_col)
    return load_population(cfg.csv_path, schema)


@dataclass
class GameOutcome:
    """Realized play at one sweep point: who did what, and the revealed set."""

    actions: dict[int, object]
    reveal: object
    chosen: tuple[int, ...]
    report: MetricsReport | None = None


@dataclass
class _RunContext:
    run_seed: int
    clf: LinearClassifier
    w_r: np.ndarray
    w_m: np.ndarray
    neg_feats: np.ndarray
    neg_labels: np.ndarray
    neg_groups: np.ndarray
    pos_feats: np.ndarray
    candidates: np.ndarray
    own0: np.ndarray
    q_x: np.ndarray
    q_xr: np.ndarray
    baseline_utility: float


def _prepare_run(pop: Population, cfg: ExperimentConfig, run_index: int) -> _RunContext:
    run_seed = derive_seed(cfg.base_seed, 1 + run_index)
    rng = np.random.default_rng(run_seed)

    n_sub = max(4, int(round(cfg.resample_fraction * len(pop))))
    n_sub = min(n_sub, len(pop))
    for _ in range(32):
        idx = np.sort(rng.choice(len(pop), size=n_sub, replace=False))
        labels = pop.labels[idx]
        if labels.min() != labels.max():
            break
    else:
        raise EmptyInputError("could not resample a two-class subset")

    feats = pop.features[idx]
    groups = pop.groups[idx]
    sub = Population.from_arrays(feats, labels, groups)
    clf = train_linear(sub, TrainConfig(cfg.learning_rate, cfg.epochs, cfg.l2_penalty,
                                        seed=run_seed % (2 ** 32)))
    w_r, w_m = random_cost_weights(pop.dim, rng)
    cm0 = CostModel(w_r, w_m, 0.0)

    pos_ids, neg_ids = partition(sub, clf)
    if not neg_ids or not pos_ids:
        raise EmptyInputError("degenerate split: one side of the classifier is empty")
    neg_feats = feats[neg_ids]
    pos_feats = feats[pos_ids]
    candidates = np.vstack([optimal_recourse(x, clf, cm0, cfg.eps) for x in neg_feats])
    own0 = np.linalg.norm(cm0.w_recourse * (candidates - neg_feats), axis=1)
    baseline = float(np.sum(np.where(labels[pos_ids] == 1, 1.0, -1.0)))
    return _RunContext(
        run_seed=run_seed,
        clf=clf,
        w_r=w_r,
        w_m=w_m,
        neg_feats=neg_feats,
        neg_labels=labels[neg_ids],
        neg_groups=groups[neg_ids],
        pos_feats=pos_feats,
        candidates=candidates,
        own0=own0,
        q_x=np.asarray(clf.qualification(neg_feats), dtype=float),
        q_xr=np.asarray(clf.qualification(candidates), dtype=float),
        baseline_utility=baseline,
    )


def _select(cfg: ExperimentConfig, ctx: _RunContext, k: int, frac_index: int,
            alpha: float) -> tuple[int, ...]:
    n_neg = ctx.neg_feats.shape[0]
    if k >= n_neg:
        return tuple(range(n_neg))
    if cfg.optimizer == "random_k":
        rng = np.random.default_rng(derive_seed(ctx.run_seed, 0x5E1, frac_index))
        return random_k_select_indices(n_neg, k, rng)
    cm = CostModel(ctx.w_r, ctx.w_m, alpha)
    inst, _ = build_geometric_instance(ctx.neg_feats, ctx.pos_feats, ctx.clf, cm, cfg.p, cfg.eps)
    inst.alpha = alpha
    if cfg.optimizer == "greedy":
        return greedy_select(inst, k)
    if cfg.optimizer == "localsearch":
        return local_search_select(inst, k)
    if cfg.optimizer == "bruteforce":
        return brute_force_select(inst, k)[0]
    if cfg.optimizer == "ilp_p1":
        return exact_ilp_p1(inst, k)[0]
    raise ConfigError(f"optimizer: unknown selector {cfg.optimizer!r}")


def random_k_select_indices(n: int, k: int, rng: np.random.Generator) -> tuple[int, ...]:
    return tuple(sorted(rng.choice(n, size=min(k, n), replace=False).tolist())) if k else ()


def _expected_utility_vec(ctx: _RunContext, c_m_revealable: np.ndarray, provided: np.ndarray,
                          alpha: float, p: float) -> float:
    r = np.where(provided, (1.0 - alpha) * ctx.own0, np.inf)
    gain = 2.0 * ctx.q_xr - 1.0
    loss = 2.0 * ctx.q_x - 1.0
    if c_m_revealable.shape[1]:
        div = (c_m_revealable < np.where(np.isfinite(r), r, 0.0)[:, None]).sum(axis=1)
        viable = (c_m_revealable < DO_NOTHING_CUTOFF).sum(axis=1)
    else:
        div = np.zeros(len(r), dtype=int)
        viable = np.zeros(len(r), dtype=int)
    surv = (1.0 - p) ** div
    p_man_only = 1.0 - (1.0 - p) ** viable
    per_agent = np.where(
        r < DO_NOTHING_CUTOFF,
        surv * gain + (1.0 - surv) * loss,
        p_man_only * loss,
    )
    return ctx.baseline_utility + float(per_agent.sum())


def _mode_masks(mode: str, ctx: _RunContext, provided: np.ndarray, alpha: float,
                min_r0_realized: np.ndarray, min_m_realized: np.ndarray,
                argmin_r: np.ndarray | None, q_z: np.ndarray | None):
    """(recourse mask, imitation mask, destination qualification) per agent."""
    if mode == "open":
        r = (1.0 - alpha) * min_r0_realized
        rec = (r < DO_NOTHING_CUTOFF) & (r <= min_m_realized)
        man = ~rec & (min_m_realized < DO_NOTHING_CUTOFF) & (min_m_realized < r)
        dest_q = q_z[argmin_r] if q_z is not None and q_z.size else np.full(len(rec), np.nan)
        return rec, man, dest_q
    holds_action = provided if mode == "gated" else np.ones(len(ctx.own0), dtype=bool)
    r = np.where(holds_action, (1.0 - alpha) * ctx.own0, np.inf)
    rec = (r < DO_NOTHING_CUTOFF) & (r <= min_m_realized)
    man = ~rec & (min_m_realized < DO_NOTHING_CUTOFF)
    return rec, man, ctx.q_xr


@dataclass
class _PointGeometry:
    """Everything that depends on the released set but not on the subsidy."""

    reveal: object
    min_r0: np.ndarray
    min_m: np.ndarray
    argmin_r: np.ndarray | None
    q_z: np.ndarray | None
    c_m_revealable: np.ndarray
    provided: np.ndarray


def _point_geometry(ctx: _RunContext, cfg: ExperimentConfig, chosen: tuple[int, ...],
                    reveal_seed: int) -> _PointGeometry:
    n_neg = ctx.neg_feats.shape[0]
    released = {int(i): ctx.candidates[i] for i in chosen}
    reveal = draw_reveal(released, ctx.pos_feats, cfg.p, reveal_seed)
    Z = reveal.public

    if Z.shape[0]:
        r_mat = pairwise_costs(ctx.w_r, ctx.neg_feats, Z)
        m_mat = pairwise_costs(ctx.w_m, ctx.neg_feats, Z)
        min_r0, min_m = r_mat.min(axis=1), m_mat.min(axis=1)
        argmin_r = r_mat.argmin(axis=1)
        q_z = np.asarray(ctx.clf.qualification(Z), dtype=float)
    else:
        min_r0 = np.full(n_neg, np.inf)
        min_m = np.full(n_neg, np.inf)
        argmin_r, q_z = None, None

    revealable = np.vstack([ctx.candidates[list(chosen)], ctx.pos_feats]) \
        if chosen else ctx.pos_feats
    c_m_revealable = pairwise_costs(ctx.w_m, ctx.neg_feats, revealable) \
        if revealable.shape[0] else np.empty((n_neg, 0))

    provided = np.zeros(n_neg, dtype=bool)
    if chosen:
        provided[list(chosen)] = True
    return _PointGeometry(reveal, min_r0, min_m, argmin_r, q_z, c_m_revealable, provided)


def run_experiment(cfg: ExperimentConfig):
    """Execute the full sweep and write runs.csv, aggregate.csv, metadata.txt.

    Rates and realized utility follow the configured response mode;
    ``utility_expected`` always follows the gated accounting with the mode's
    provision (everyone in anchored mode, the released agents otherwise).
    Returns (rows, paths, sign_violations): the per-run row dicts, the output
    paths, and the count of realized actions whose utility delta carried the
    wrong sign (zero under a calibrated score).
    """
    cfg.validate()
    pop = _load_dataset(cfg)
    os.makedirs(cfg.output_dir, exist_ok=True)

    rows: list[dict] = []
    sign_violations = 0
    started = time.time()

    for run_index in range(cfg.runs):
        ctx = _prepare_run(pop, cfg, run_index)
        n_neg = ctx.neg_feats.shape[0]
        group_names = sorted(set(ctx.neg_groups.tolist()))
        masks = {g: ctx.neg_groups == g for g in group_names}

        for fi, frac in enumerate(cfg.provision_fractions):
            k = math.ceil(frac * n_neg)
            reveal_seed = derive_seed(ctx.run_seed, 0x0EA1, fi)
            geometry_cache: dict[tuple[int, ...], _PointGeometry] = {}

            for alpha in cfg.subsidies:
                chosen = _select(cfg, ctx, k, fi, alpha)
                if chosen not in geometry_cache:
                    geometry_cache[chosen] = _point_geometry(ctx, cfg, chosen, reveal_seed)
                geo = geometry_cache[chosen]

                provided_for_utility = np.ones(n_neg, dtype=bool) \
                    if cfg.response_mode == "anchored" else geo.provided
                utility_expected = _expected_utility_vec(
                    ctx, geo.c_m_revealable, provided_for_utility, alpha, cfg.p)

                rec, man, dest_q = _mode_masks(
                    cfg.response_mode, ctx, geo.provided, alpha,
                    geo.min_r0, geo.min_m, geo.argmin_r, geo.q_z)

                sign_violations += int(np.sum(rec & (dest_q < 0.5 - SIGN_SLACK)))
                sign_violations += int(np.sum(man & (ctx.q_x > 0.5 + SIGN_SLACK)))

                redraw_rng = np.random.default_rng(
                    derive_seed(ctx.run_seed, 0x1ABE1, fi, int(round(alpha * 1000))))
                redraw = redraw_rng.random(n_neg) < np.where(np.isnan(dest_q), 0.0, dest_q)
                utility_realized = ctx.baseline_utility \
                    + float(np.sum(np.where(rec, np.where(redraw, 1.0, -1.0), 0.0))) \
                    + float(np.sum(np.where(man, np.where(ctx.neg_labels == 1, 1.0, -1.0), 0.0)))

                has_z = np.isfinite(geo.min_r0).any()
                comps = (geo.min_r0, ctx.own0) if has_z else None
                cost = social_cost_at(comps, alpha)

                diff_rec = diff_cost = None
                if len(group_names) >= 2:
                    g0, g1 = masks[group_names[0]], masks[group_names[1]]
                    if g0.any() and g1.any():
                        diff_rec = abs(float(rec[g1].mean()) - float(rec[g0].mean()))
                        if comps is not None:
                            c0 = social_cost_at((geo.min_r0[g0], ctx.own0[g0]), alpha)
                            c1 = social_cost_at((geo.min_r0[g1], ctx.own0[g1]), alpha)
                            diff_cost = abs(c1 - c0)

                report = MetricsReport(
                    recourse_rate=float(rec.mean()),
                    manipulation_rate=float(man.mean()),
                    social_cost=cost,
                    utility_expected=utility_expected,
                    utility_realized=utility_realized,
                    diff_rec=diff_rec,
                    diff_cost=diff_cost,
                    run_seed=ctx.run_seed,
                    alpha=float(alpha),
                    p=cfg.p,
                    provision_fraction=float(frac),
                    mode=cfg.response_mode,
                )
                rows.append(report.as_row())

    paths = _write_outputs(cfg, rows, sign_violations, time.time() - started,
                           standardization=pop.standardization)
    return rows, paths, sign_violations


def simulate_point(ctx_like, chosen: tuple[int, ...], reveal, cm: CostModel,
                   clf: LinearClassifier, mode: str) -> GameOutcome:
    """Loop-based play-out for one sweep point; the readable twin of the
    vectorized path, used at small scale and to cross-check it."""
    neg_feats, candidates = ctx_like.neg_feats, ctx_like.candidates
    Z = reveal.public
    actions = {}
    for i, x in enumerate(neg_feats):
        if mode == "open":
            m_r0, m_m = (np.inf, np.inf)
            if Z.shape[0]:
                m_r0 = float(pairwise_costs(cm.w_recourse, x[None, :], Z).min())
                m_m = float(pairwise_costs(cm.w_manipulation, x[None, :], Z).min())
            r = (1.0 - cm.alpha) * m_r0
            if r < DO_NOTHING_CUTOFF and r <= m_m:
                j = int(pairwise_costs(cm.w_recourse, x[None, :], Z).argmin())
                actions[i] = Action(ActionKind.RECOURSE, Z[j].copy(), r, Z[j].copy())
            elif m_m < DO_NOTHING_CUTOFF:
                j = int(pairwise_costs(cm.w_manipulation, x[None, :], Z).argmin())
                actions[i] = Action(ActionKind.MANIPULATE, Z[j].copy(), m_m, x.copy())
            else:
                actions[i] = Action(ActionKind.NOTHING, None, 0.0, x.copy())
        else:
            zeta = 1 if (mode == "anchored" or i in chosen) else 0
            actions[i] = final_action(x, zeta, candidates[i], Z, cm, clf)
    return GameOutcome(actions=actions, reveal=reveal, chosen=tuple(chosen))


def _write_outputs(cfg: ExperimentConfig, rows: list[dict], sign_violations: int,
                   elapsed: float, standardization=None):
    runs_path = os.path.join(cfg.output_dir, "runs.csv")
    agg_path = os.path.join(cfg.output_dir, "aggregate.csv")
    meta_path = os.path.join(cfg.output_dir, "metadata.txt")

    # per-run rows in (run, subsidy, fraction) order
    order = {a: i for i, a in enumerate(cfg.subsidies)}
    forder = {f: i for i, f in enumerate(cfg.provision_fractions)}
    sorted_rows = sorted(
        range(len(rows)),
        key=lambda i: (i // (len(order) * len(forder)),
                       order[rows[i]["alpha"]],
                       forder[rows[i]["provision_fraction"]]),
    )
    with open(runs_path, "w", newline="") as fh:
        fh.write(",".join(RUN_COLUMNS) + "\n")
        for i in sorted_rows:
            fh.write(",".join(format_cell(rows[i][c]) for c in RUN_COLUMNS) + "\n")

    agg_columns = ["alpha", "p", "provision_fraction", "mode", "group", "n_runs"]
    for m in METRIC_COLUMNS:
        agg_columns += [f"{m}_mean", f"{m}_ci_lo", f"{m}_ci_hi"]

    with open(agg_path, "w", newline="") as fh:
        fh.write(",".join(agg_columns) + "\n")
        for alpha in cfg.subsidies:
            for frac in cfg.provision_fractions:
                bucket = [r for r in rows
                          if r["alpha"] == alpha and r["provision_fraction"] == frac]
                reports = [MetricsReport(**{k: r[k] for k in (
                    "recourse_rate", "manipulation_rate", "social_cost",
                    "utility_expected", "utility_realized", "diff_rec", "diff_cost")})
                    for r in bucket]
                cells = [format_cell(float(alpha)), format_cell(cfg.p),
                         format_cell(float(frac)), cfg.response_mode, "all",
                         str(len(bucket))]
                if len(reports) >= 2:
                    summary = aggregate(reports)
                    for m in METRIC_COLUMNS:
                        s = summary[m]
                        cells += [format_cell(s.mean), format_cell(s.ci_lo), format_cell(s.ci_hi)]
                else:
                    only = reports[0] if reports else None
                    for m in METRIC_COLUMNS:
                        v = getattr(only, m) if only else None
                        cells += [format_cell(v), format_cell(v), format_cell(v)]
                fh.write(",".join(cells) + "\n")

    with open(meta_path, "w") as fh:
        fh.write(f"timestamp = {time.strftime('%Y-%m-%dT%H:%M:%S')}\n")
        fh.write(f"elapsed_seconds = {elapsed:.3f}\n")
        fh.write(f"sign_violations = {sign_violations}\n")
        if standardization is not None:
            mean, std = standardization
            fh.write("feature_means = " + ",".join(repr(float(v)) for v in mean) + "\n")
            fh.write("feature_stds = " + ",".join(repr(float(v)) for v in std) + "\n")
        for f in dc_fields(cfg):
            fh.write(f"{f.name} = {getattr(cfg, f.name)}\n")

    return {"runs": runs_path, "aggregate": agg_path, "metadata": meta_path}
