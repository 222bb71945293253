"""Population-level metrics: burden of withheld actions, disparities, utility.

Undefined quantities (an empty revealed set, an empty group) are reported as
None and written as "NA", never coerced to zero; a silent zero would fabricate
monotone trends.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .costs import CostModel, recourse_cost_matrix
from .model import LinearClassifier
from .response import ActionKind, DEFAULT_EPS, optimal_recourse

RUN_COLUMNS = [
    "run_seed",
    "alpha",
    "p",
    "provision_fraction",
    "mode",
    "recourse_rate",
    "manipulation_rate",
    "social_cost",
    "utility_expected",
    "utility_realized",
    "group",
    "diff_rec",
    "diff_cost",
]

METRIC_COLUMNS = [
    "recourse_rate",
    "manipulation_rate",
    "social_cost",
    "utility_expected",
    "utility_realized",
    "diff_rec",
    "diff_cost",
]


@dataclass
class MetricsReport:
    recourse_rate: float
    manipulation_rate: float
    social_cost: float | None
    utility_expected: float | None
    utility_realized: float | None
    diff_rec: float | None = None
    diff_cost: float | None = None
    by_group: dict[str, "MetricsReport"] = field(default_factory=dict)
    run_seed: int | None = None
    alpha: float | None = None
    p: float | None = None
    provision_fraction: float | None = None
    mode: str | None = None

    def as_row(self, group: str = "all") -> dict:
        return {
            "run_seed": self.run_seed,
            "alpha": self.alpha,
            "p": self.p,
            "provision_fraction": self.provision_fraction,
            "mode": self.mode,
            "recourse_rate": self.recourse_rate,
            "manipulation_rate": self.manipulation_rate,
            "social_cost": self.social_cost,
            "utility_expected": self.utility_expected,
            "utility_realized": self.utility_realized,
            "group": group,
            "diff_rec": self.diff_rec,
            "diff_cost": self.diff_cost,
        }


def social_cost(Z, negatives, cm: CostModel, clf: LinearClassifier, eps: float = DEFAULT_EPS) -> float | None:
    """Total extra cost of settling for the cheapest revealed destination.

    Per agent: (cheapest revealed recourse cost) minus (cost of the agent's
    own optimal action), both at the model's subsidy. None when nothing is
    revealed; the quantity has no meaning then.
    """
    Z = np.atleast_2d(np.asarray(Z, dtype=float)) if Z is not None and np.size(Z) else None
    if Z is None or Z.shape[0] == 0:
        return None
    negatives = np.atleast_2d(np.asarray(negatives, dtype=float))
    if negatives.shape[0] == 0:
        return None
    revealed_min = recourse_cost_matrix(cm, negatives, Z).min(axis=1)
    own = np.array([
        float(recourse_cost_matrix(cm, x[None, :], optimal_recourse(x, clf, cm, eps)[None, :])[0, 0])
        for x in negatives
    ])
    return float(np.sum(revealed_min - own))


def social_cost_components(Z, negatives, cm_unsubsidized: CostModel, clf: LinearClassifier,
                           eps: float = DEFAULT_EPS) -> tuple[np.ndarray, np.ndarray] | None:
    """Unsubsidized (cheapest-revealed, own-optimal) cost arrays, or None.

    The cost at subsidy alpha is (1 - alpha) * sum(revealed - own); sweeps
    reuse the components instead of recomputing projections per alpha.
    """
    Z = np.atleast_2d(np.asarray(Z, dtype=float)) if Z is not None and np.size(Z) else None
    if Z is None or Z.shape[0] == 0:
        return None
    negatives = np.atleast_2d(np.asarray(negatives, dtype=float))
    if negatives.shape[0] == 0:
        return None
    base = cm_unsubsidized.with_alpha(0.0)
    revealed_min = recourse_cost_matrix(base, negatives, Z).min(axis=1)
    own = np.array([
        float(recourse_cost_matrix(base, x[None, :], optimal_recourse(x, clf, base, eps)[None, :])[0, 0])
        for x in negatives
    ])
    return revealed_min, own


def social_cost_at(components: tuple[np.ndarray, np.ndarray] | None, alpha: float) -> float | None:
    if components is None:
        return None
    revealed_min, own = components
    return float((1.0 - alpha) * np.sum(revealed_min - own))


def disparity(report_g0: MetricsReport, report_g1: MetricsReport, which: str) -> float | None:
    """Absolute between-group gap in social cost or the recourse rate."""
    if which == "cost":
        a, b = report_g0.social_cost, report_g1.social_cost
    elif which == "rec":
        a, b = report_g0.recourse_rate, report_g1.recourse_rate
    else:
        raise ValueError(f"which must be 'cost' or 'rec', got {which!r}")
    if a is None or b is None:
        return None
    return abs(float(b) - float(a))


def realized_utility(
    actions: dict[int, object],
    positive_ids,
    labels: np.ndarray,
    clf: LinearClassifier,
    rng: np.random.Generator,
) -> float:
    """Realized score over reported features: +1 per true positive, -1 per
    false positive.

    Initially positive agents report themselves. An honest change redraws the
    agent's label from the model's probability at the new features; an
    imitation keeps the original label behind the borrowed report.
    """
    total = 0.0
    for i in positive_ids:
        total += 1.0 if labels[i] == 1 else -1.0
    for i, action in actions.items():
        if action.kind is ActionKind.RECOURSE:
            q = float(clf.qualification(action.target))
            new_label = 1 if rng.random() < q else 0
            total += 1.0 if new_label == 1 else -1.0
        elif action.kind is ActionKind.MANIPULATE:
            total += 1.0 if labels[i] == 1 else -1.0
    return total


@dataclass(frozen=True)
class MetricSummary:
    mean: float | None
    ci_lo: float | None
    ci_hi: float | None
    n: int


def aggregate(reports: list[MetricsReport]) -> dict[str, MetricSummary]:
    """Mean and normal-approximation 95% interval per metric over runs.

    Needs at least two reports. None values are excluded metric by metric;
    a metric absent everywhere aggregates to None.
    """
    if len(reports) < 2:
        raise ValueError(f"aggregation needs >= 2 reports, got {len(reports)}")
    out: dict[str, MetricSummary] = {}
    for name in METRIC_COLUMNS:
        vals = np.array([getattr(r, name) for r in reports if getattr(r, name) is not None], dtype=float)
        if vals.size == 0:
            out[name] = MetricSummary(None, None, None, 0)
            continue
        mean = float(vals.mean())
        if vals.size == 1:
            out[name] = MetricSummary(mean, mean, mean, 1)
            continue
        half = 1.96 * float(vals.std(ddof=1)) / float(np.sqrt(vals.size))
        out[name] = MetricSummary(mean, mean - half, mean + half, int(vals.size))
    return out


def format_cell(value) -> str:
    """CSV cell: repr for floats so reruns are byte-identical, NA for absent."""
    if value is None:
        return "NA"
    if isinstance(value, float):
        return repr(value)
    return str(value)
