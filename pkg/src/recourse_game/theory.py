"""Executable checks for the analytical claims the simulation rests on.

Every claim becomes a sweep or a sampler that returns its violations instead
of asserting, so suites can distinguish honest failures from negative
controls that break a precondition on purpose.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .costs import CostModel, recourse_cost_matrix
from .metrics import social_cost_at, social_cost_components
from .model import LinearClassifier
from .optimizer import GameInstance, manipulation_sets, total_manipulation_exposure
from .response import ActionKind, open_choice_masks, open_min_costs

EXACT_SLACK = 1e-12


@dataclass
class SweepResult:
    grid: np.ndarray
    values: list
    metric: str
    direction: str
    violations: list[tuple[float, float, float, float]] = field(default_factory=list)
    alpha_star: float | None = None

    @property
    def ok(self) -> bool:
        return not self.violations


@dataclass(frozen=True)
class SweepConfig:
    """One fixed revealed set swept over subsidy levels.

    ``metric`` is one of rec_rate, social_cost, diff_cost, diff_rec, utility.
    Group masks are required for the disparity metrics; the classifier is
    required wherever optimal actions or qualification enter.
    """

    negatives: np.ndarray
    Z: np.ndarray
    w_recourse: np.ndarray
    w_manipulation: np.ndarray
    grid: np.ndarray
    metric: str
    clf: LinearClassifier | None = None
    group_masks: tuple[np.ndarray, np.ndarray] | None = None


def check_thm_signs(actions, clf: LinearClassifier) -> list[tuple[int, str, float]]:
    """Utility-delta sign violations across realized actions.

    Honest changes must not lower expected utility and imitations must not
    raise it when the score is calibrated. Returns (agent id, kind, delta)
    triples; empty means the claim held.
    """
    bad = []
    for i, action in actions.items() if isinstance(actions, dict) else enumerate(actions):
        if action is None:
            continue
        if action.kind is ActionKind.RECOURSE:
            delta = 2.0 * float(clf.qualification(action.target)) - 1.0
            if delta < -EXACT_SLACK:
                bad.append((i, "recourse", delta))
        elif action.kind is ActionKind.MANIPULATE:
            delta = 2.0 * float(clf.qualification(action.effective_true_feature)) - 1.0
            if delta > EXACT_SLACK:
                bad.append((i, "manipulation", delta))
    return bad


def _open_outcome(negatives, Z, cm: CostModel):
    min_r, min_m = open_min_costs(Z, negatives, cm)
    return open_choice_masks(min_r, min_m)


def _metric_value(cfg: SweepConfig, alpha: float) -> float | None:
    cm = CostModel(cfg.w_recourse, cfg.w_manipulation, alpha)
    if cfg.metric == "rec_rate":
        rec, _ = _open_outcome(cfg.negatives, cfg.Z, cm)
        return float(rec.mean())
    if cfg.metric == "social_cost":
        comps = social_cost_components(cfg.Z, cfg.negatives, cm, cfg.clf)
        return social_cost_at(comps, alpha)
    if cfg.metric == "diff_cost":
        g0, g1 = cfg.group_masks
        c0 = social_cost_at(social_cost_components(cfg.Z, cfg.negatives[g0], cm, cfg.clf), alpha)
        c1 = social_cost_at(social_cost_components(cfg.Z, cfg.negatives[g1], cm, cfg.clf), alpha)
        if c0 is None or c1 is None:
            return None
        return abs(c1 - c0)
    if cfg.metric == "diff_rec":
        g0, g1 = cfg.group_masks
        rec0, _ = _open_outcome(cfg.negatives[g0], cfg.Z, cm)
        rec1, _ = _open_outcome(cfg.negatives[g1], cfg.Z, cm)
        return abs(float(rec1.mean()) - float(rec0.mean()))
    if cfg.metric == "utility":
        rec, man = _open_outcome(cfg.negatives, cfg.Z, cm)
        q_x = np.asarray(cfg.clf.qualification(cfg.negatives), dtype=float)
        best_target = recourse_cost_matrix(cm.with_alpha(0.0), cfg.negatives, cfg.Z).argmin(axis=1)
        q_dest = np.asarray(cfg.clf.qualification(np.atleast_2d(cfg.Z)[best_target]), dtype=float)
        return float(np.sum((2.0 * q_dest - 1.0) * rec + (2.0 * q_x - 1.0) * man))
    raise ValueError(f"unknown sweep metric {cfg.metric!r}")


_DIRECTIONS = {
    "rec_rate": "non-decreasing",
    "social_cost": "non-increasing",
    "diff_cost": "non-increasing",
    "utility": "non-decreasing",
    "diff_rec": "tail-non-increasing",
}


def last_local_max(values: np.ndarray) -> int:
    """Largest index that peaks: at least its left neighbor, strictly above
    its right one. A sequence with no strict drop anywhere returns 0, so the
    tail under test becomes the whole grid."""
    n = len(values)
    for i in range(n - 1, -1, -1):
        left_ok = i == 0 or values[i] >= values[i - 1]
        right_ok = (values[i] > values[i + 1]) if i < n - 1 else (n > 1 and values[i] > values[i - 1])
        if left_ok and right_ok:
            return i
    return 0


def sweep_subsidy(cfg: SweepConfig) -> SweepResult:
    """Evaluate the metric across the subsidy grid and collect violations of
    its claimed direction.

    The revealed set stays fixed across the grid; that is the regime the
    monotone claims are stated for. For diff_rec only the tail past the last
    local maximum is held to the non-increasing claim.
    """
    grid = np.asarray(cfg.grid, dtype=float)
    if grid.size == 0:
        raise ValueError("empty subsidy grid")
    if np.any(np.diff(grid) <= 0):
        raise ValueError("subsidy grid must be strictly increasing")
    values = [_metric_value(cfg, float(a)) for a in grid]
    direction = _DIRECTIONS[cfg.metric]

    result = SweepResult(grid=grid, values=values, metric=cfg.metric, direction=direction)
    pairs = list(zip(range(len(grid) - 1), range(1, len(grid))))
    if direction == "tail-non-increasing":
        arr = np.array([v if v is not None else np.nan for v in values])
        start = last_local_max(arr)
        result.alpha_star = float(grid[start])
        pairs = [(i, j) for i, j in pairs if i >= start]
        direction = "non-increasing"

    for i, j in pairs:
        a, b = values[i], values[j]
        if a is None or b is None:
            continue
        if direction == "non-decreasing" and b < a - EXACT_SLACK:
            result.violations.append((float(grid[i]), float(grid[j]), a, b))
        if direction == "non-increasing" and b > a + EXACT_SLACK:
            result.violations.append((float(grid[i]), float(grid[j]), a, b))
    return result


def sample_submodularity(instance: GameInstance, trials: int, seed: int,
                         p: float | None = None) -> int:
    """Count diminishing-returns violations of the exposure objective.

    Draws random chains A within B and an element outside B, and compares
    marginal gains exactly (floating-point slack only). A correct objective
    returns zero.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = np.random.default_rng(seed)
    m = instance.n_candidates
    sets = manipulation_sets(instance)
    p = instance.p if p is None else p

    def u(S):
        return total_manipulation_exposure(instance, S, p=p, sets=sets)

    violations = 0
    for _ in range(trials):
        if m < 1:
            break
        z = int(rng.integers(m))
        rest = [c for c in range(m) if c != z]
        b_size = int(rng.integers(0, len(rest) + 1))
        B = set(rng.choice(rest, size=b_size, replace=False).tolist()) if b_size else set()
        a_size = int(rng.integers(0, len(B) + 1)) if B else 0
        A = set(rng.choice(sorted(B), size=a_size, replace=False).tolist()) if a_size else set()
        gain_a = u(A | {z}) - u(A)
        gain_b = u(B | {z}) - u(B)
        if gain_a < gain_b - EXACT_SLACK:
            violations += 1
    return violations


@dataclass(frozen=True)
class TheoremCheck:
    name: str
    instances: int
    violations: int

    @property
    def ok(self) -> bool:
        return self.violations == 0


def format_report(checks: list[TheoremCheck]) -> str:
    """One machine-readable line per check: name, count tested, violations."""
    lines = [f"{c.name}\tinstances={c.instances}\tviolations={c.violations}\t{'ok' if c.ok else 'FAIL'}"
             for c in checks]
    return "\n".join(lines) + "\n"


def run_theorem_suite(seed: int = 0, instances: int = 20, trials_per_instance: int = 60) -> list[TheoremCheck]:
    """Run every claim check on freshly generated problems.

    Returns one entry per claim; a zero violation count everywhere is the
    expected outcome on a correct build.
    """
    from .fixtures import (
        random_geometric_setup,
        random_mku,
        random_table_instance,
        single_crossing_1d_setup,
    )
    from .optimizer import (
        brute_force_min_k_union,
        count_realized_actions,
        exact_ilp_p1,
        min_manipulation_select,
        mku_to_instance,
        recourse_count_p1,
    )
    import itertools as it

    grid11 = np.round(np.linspace(0.0, 1.0, 11), 10)
    grid101 = np.round(np.linspace(0.0, 1.0, 101), 10)
    checks: list[TheoremCheck] = []

    sign_bad = 0
    for s in range(instances):
        setup = random_geometric_setup(seed + s)
        for alpha in (0.0, 0.5, 1.0):
            cm = CostModel(setup.w_recourse, setup.w_manipulation, alpha)
            min_r, min_m = open_min_costs(setup.Z, setup.negatives, cm)
            rec, man = open_choice_masks(min_r, min_m)
            base = recourse_cost_matrix(cm.with_alpha(0.0), setup.negatives, setup.Z)
            dest = np.atleast_2d(setup.Z)[base.argmin(axis=1)]
            q_dest = np.asarray(setup.clf.qualification(dest), dtype=float)
            q_self = np.asarray(setup.clf.qualification(setup.negatives), dtype=float)
            sign_bad += int(np.sum(rec & (2 * q_dest - 1 < -EXACT_SLACK)))
            sign_bad += int(np.sum(man & (2 * q_self - 1 > EXACT_SLACK)))
    checks.append(TheoremCheck("action_sign_of_utility_change", instances, sign_bad))

    def sweep_violations(metric: str, grid, builder) -> int:
        bad = 0
        for s in range(instances):
            setup = builder(seed + 1000 + s)
            cfg = SweepConfig(
                negatives=setup.negatives, Z=setup.Z,
                w_recourse=setup.w_recourse, w_manipulation=setup.w_manipulation,
                grid=grid, metric=metric, clf=setup.clf, group_masks=setup.group_masks,
            )
            bad += len(sweep_subsidy(cfg).violations)
        return bad

    checks.append(TheoremCheck(
        "recourse_rate_nondecreasing_in_subsidy", instances,
        sweep_violations("rec_rate", grid11, random_geometric_setup)))
    checks.append(TheoremCheck(
        "social_cost_nonincreasing_in_subsidy", instances,
        sweep_violations("social_cost", grid11, random_geometric_setup)))
    checks.append(TheoremCheck(
        "cost_disparity_nonincreasing_in_subsidy", instances,
        sweep_violations("diff_cost", grid11, random_geometric_setup)))
    checks.append(TheoremCheck(
        "rate_disparity_tail_nonincreasing", instances,
        sweep_violations("diff_rec", grid101, random_geometric_setup)))
    checks.append(TheoremCheck(
        "utility_nondecreasing_in_subsidy_1d", instances,
        sweep_violations("utility", grid11, single_crossing_1d_setup)))

    ident_bad = 0
    for s in range(instances):
        setup = random_geometric_setup(seed + 2000 + s)
        cfg = SweepConfig(
            negatives=setup.negatives, Z=setup.Z,
            w_recourse=setup.w_recourse, w_manipulation=setup.w_manipulation,
            grid=grid11, metric="social_cost", clf=setup.clf,
        )
        res = sweep_subsidy(cfg)
        base = res.values[0]
        for a, v in zip(res.grid, res.values):
            expect = (1.0 - a) * base
            if abs(v - expect) > 1e-9 * max(1.0, abs(expect)):
                ident_bad += 1
    checks.append(TheoremCheck("social_cost_scales_linearly_with_subsidy", instances, ident_bad))

    sub_bad = 0
    for s in range(instances):
        inst = random_table_instance(seed + 3000 + s, n=int(np.random.default_rng(s).integers(4, 13)))
        for p in (0.3, 0.7, 1.0):
            sub_bad += sample_submodularity(inst, trials_per_instance, seed + s, p=p)
    checks.append(TheoremCheck("exposure_diminishing_returns", instances * 3, sub_bad))

    ilp_bad = 0
    n_ilp = max(10, instances // 2)
    for s in range(n_ilp):
        rng = np.random.default_rng(seed + 4000 + s)
        inst = random_table_instance(seed + 4000 + s, n=int(rng.integers(3, 9)), p=1.0)
        k = int(rng.integers(0, 4))
        k = min(k, inst.n_candidates)
        _, bval = exact_ilp_p1(inst, k)
        best = max(recourse_count_p1(inst, c) for c in it.combinations(range(inst.n_candidates), k))
        if bval != best:
            ilp_bad += 1
    checks.append(TheoremCheck("exact_selector_matches_enumeration", n_ilp, ilp_bad))

    mku_bad = 0
    n_mku = max(10, instances // 2)
    for s in range(n_mku):
        universe, sets, k = random_mku(seed + 5000 + s)
        inst = mku_to_instance(universe, sets, k)
        for subset in it.combinations(range(len(sets)), k):
            union = set().union(*(sets[j] for j in subset))
            _, manip, _ = count_realized_actions(inst, subset)
            if manip != len(union) - k:
                mku_bad += 1
        _, best_manip = min_manipulation_select(inst, k)
        _, best_union = brute_force_min_k_union(universe, sets, k)
        if int(round(best_manip)) != best_union - k:
            mku_bad += 1
    checks.append(TheoremCheck("union_reduction_counts", n_mku, mku_bad))
    return checks
