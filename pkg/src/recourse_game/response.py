"""Agent best responses: honest change, imitation, or doing nothing.

A negatively classified agent weighs the subsidized cost of its recommended
feature change against the cheapest publicly visible feature vector it could
misreport, under a do-nothing cutoff of 1. Exact ties between the two active
options resolve to the honest change.

Two rate semantics are provided. ``recourse_rate``/``manipulation_rate``
follow the open reading: both minimum costs range over the revealed set, with
no per-agent provision gate. ``final_action`` follows the gated reading: the
honest option exists only for agents holding an assigned action.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .costs import (
    CostModel,
    manipulation_cost,
    manipulation_cost_matrix,
    recourse_cost,
    recourse_cost_matrix,
)
from .errors import InfeasibleRecourseError, UndefinedRateError
from .model import LinearClassifier

DO_NOTHING_CUTOFF = 1.0
DEFAULT_EPS = 1e-6


class ActionKind(Enum):
    RECOURSE = "recourse"
    MANIPULATE = "manipulate"
    NOTHING = "nothing"


@dataclass(frozen=True)
class Action:
    kind: ActionKind
    target: np.ndarray | None
    paid_cost: float
    effective_true_feature: np.ndarray

    @property
    def reported_feature(self) -> np.ndarray:
        return self.effective_true_feature if self.target is None else self.target


# agent id -> 1 when holding an assigned recourse action
ProvisionFlags = dict[int, int]


def optimal_recourse(x, clf: LinearClassifier, cm: CostModel, eps: float = DEFAULT_EPS) -> np.ndarray:
    """Cheapest feature change reaching score >= threshold + eps.

    For a linear score under a weighted l2 cost this is a closed-form
    projection onto the target halfspace in the metric the recourse weights
    induce. Dimensions with zero recourse weight are free: if the classifier
    listens to any such dimension the projection moves along it at zero cost.
    """
    x = np.asarray(x, dtype=float)
    w = clf.weights
    gap = (clf.score_threshold + eps) - clf.score(x)
    if gap <= 0:
        return x.copy()

    wr = cm.w_recourse
    free = (wr == 0) & (w != 0)
    if free.any():
        d0 = int(np.flatnonzero(free)[0])
        z = x.copy()
        z[d0] += gap / w[d0]
        return z

    direction = np.where(wr > 0, w / np.where(wr > 0, wr, 1.0), 0.0)
    denom = float(direction @ direction)
    if denom == 0.0:
        raise InfeasibleRecourseError("classifier ignores every actionable dimension")
    step = gap * direction / denom
    return x + np.where(wr > 0, step / np.where(wr > 0, wr, 1.0), 0.0)


def optimal_recourse_cost(x, clf: LinearClassifier, cm: CostModel, eps: float = DEFAULT_EPS) -> float:
    """Cost of the optimal change without materializing the target."""
    return recourse_cost(cm, np.asarray(x, dtype=float), optimal_recourse(x, clf, cm, eps))


def _lexicographic_argmin(targets: np.ndarray, costs: np.ndarray) -> int:
    best = np.min(costs)
    tied = np.flatnonzero(costs == best)
    if len(tied) == 1:
        return int(tied[0])
    order = sorted(tied, key=lambda i: tuple(targets[i]))
    return int(order[0])


def optimal_manipulation(x, Z, cm: CostModel) -> tuple[np.ndarray, float] | None:
    """Cheapest revealed vector to imitate, or None when nothing is revealed.

    Cost ties break toward the lexicographically smallest target so the
    choice never depends on the order the set was assembled in.
    """
    Z = _as_target_matrix(Z, cm.dim)
    if Z.shape[0] == 0:
        return None
    x = np.asarray(x, dtype=float)
    # direct differences, not the quadratic-form shortcut: exact ties must
    # surface so the lexicographic rule can see them
    costs = np.linalg.norm(cm.w_manipulation * (Z - x), axis=1)
    idx = _lexicographic_argmin(Z, costs)
    return Z[idx].copy(), float(costs[idx])


def _as_target_matrix(Z, dim: int) -> np.ndarray:
    if Z is None:
        return np.empty((0, dim))
    arr = np.asarray(Z, dtype=float)
    if arr.size == 0:
        return np.empty((0, dim))
    return np.atleast_2d(arr)


def final_action(x, zeta: int, x_R_assigned, Z, cm: CostModel, clf: LinearClassifier) -> Action:
    """Pick the agent's move given its provision flag and the revealed set.

    The honest branch uses only the assigned action; the revealed set matters
    to it solely through the cheapest imitation it offers. Without provision
    the agent imitates when that is worth doing, and otherwise stays put.
    """
    x = np.asarray(x, dtype=float)
    r_cost = np.inf
    if zeta:
        assigned = np.asarray(x_R_assigned, dtype=float)
        r_cost = recourse_cost(cm, x, assigned)
    manip = optimal_manipulation(x, Z, cm)
    m_cost = manip[1] if manip is not None else np.inf

    if r_cost < DO_NOTHING_CUTOFF and r_cost <= m_cost:
        return Action(ActionKind.RECOURSE, assigned, r_cost, assigned)
    if m_cost < DO_NOTHING_CUTOFF:
        target = manip[0]
        return Action(ActionKind.MANIPULATE, target, m_cost, x)
    return Action(ActionKind.NOTHING, None, 0.0, x)


def open_min_costs(Z, negatives, cm: CostModel) -> tuple[np.ndarray, np.ndarray]:
    """Per-agent cheapest recourse and manipulation costs over the revealed set.

    Returns (min recourse cost at the model's subsidy, min manipulation cost);
    both are +inf where the revealed set is empty. The unsubsidized recourse
    minimum is the first array divided by (1 - alpha) when alpha < 1.
    """
    negatives = np.atleast_2d(np.asarray(negatives, dtype=float))
    Z = _as_target_matrix(Z, negatives.shape[1])
    n = negatives.shape[0]
    if Z.shape[0] == 0:
        return np.full(n, np.inf), np.full(n, np.inf)
    min_r = recourse_cost_matrix(cm, negatives, Z).min(axis=1)
    min_m = manipulation_cost_matrix(cm, negatives, Z).min(axis=1)
    return min_r, min_m


def open_choice_masks(min_r: np.ndarray, min_m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Boolean (recourse, manipulation) choices from open-mode minimum costs."""
    rec = (min_r < DO_NOTHING_CUTOFF) & (min_r <= min_m)
    man = ~rec & (min_m < DO_NOTHING_CUTOFF) & (min_m < min_r)
    return rec, man


def recourse_rate(Z, negatives, cm: CostModel) -> float:
    """Fraction of negatively classified agents choosing the honest change
    when every revealed vector is open to them as a destination."""
    rec, _ = _open_rates_masks(Z, negatives, cm)
    return float(rec.mean())


def manipulation_rate(Z, negatives, cm: CostModel) -> float:
    """Fraction choosing to imitate a revealed vector under the open reading."""
    _, man = _open_rates_masks(Z, negatives, cm)
    return float(man.mean())


def _open_rates_masks(Z, negatives, cm: CostModel):
    negatives = np.atleast_2d(np.asarray(negatives, dtype=float))
    if negatives.shape[0] == 0:
        raise UndefinedRateError("rates are undefined over zero negatively classified agents")
    min_r, min_m = open_min_costs(Z, negatives, cm)
    return open_choice_masks(min_r, min_m)


def rates_via_threshold_form(Z, negatives, cm_unsubsidized: CostModel, alpha: float) -> tuple[float, float]:
    """Rates recovered from each agent's subsidy flip point.

    Algebraically equivalent route to ``recourse_rate``/``manipulation_rate``:
    an agent takes the honest change once alpha clears 1 - m/c against the
    imitation minimum m and strictly clears 1 - 1/c against the cutoff, where
    c is its unsubsidized recourse minimum. Used to cross-check the direct
    indicator.
    """
    negatives = np.atleast_2d(np.asarray(negatives, dtype=float))
    if negatives.shape[0] == 0:
        raise UndefinedRateError("rates are undefined over zero negatively classified agents")
    base = cm_unsubsidized.with_alpha(0.0)
    min_c, min_m = open_min_costs(Z, negatives, base)

    with np.errstate(divide="ignore", invalid="ignore"):
        against_cutoff = 1.0 - DO_NOTHING_CUTOFF / min_c
        against_manip = 1.0 - min_m / min_c
    zero_c = min_c == 0
    rec = np.where(
        zero_c,
        True,
        (alpha > against_cutoff) & (alpha >= np.where(np.isfinite(against_manip), against_manip, -np.inf)),
    )
    rec &= np.isfinite(min_c)
    man = ~rec & (min_m < DO_NOTHING_CUTOFF) & (min_m < (1.0 - alpha) * min_c)
    return float(np.mean(rec)), float(np.mean(man))
