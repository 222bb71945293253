"""Seeded random problem generators shared by the test suites and the CLI."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .costs import CostModel, random_cost_weights
from .model import LinearClassifier
from .optimizer import GameInstance
from .response import optimal_recourse


def random_table_instance(seed: int, n: int = 8, p: float = 0.7,
                          n_positives: int = 0) -> GameInstance:
    """Synthetic cost tables with one candidate per agent.

    Own-action costs straddle the do-nothing cutoff and imitation costs range
    from trivially cheap to unaffordable, so instances exercise every branch.
    Qualification values respect calibration: below one half before acting,
    above it at the destination.
    """
    rng = np.random.default_rng(seed)
    c_r = rng.uniform(0.3, 2.5, size=(n, n))
    own = rng.uniform(0.05, 1.4, size=n)
    np.fill_diagonal(c_r, own)
    c_m = rng.uniform(0.05, 2.0, size=(n, n))
    c_m_pos = rng.uniform(0.05, 2.0, size=(n, n_positives)) if n_positives else None
    return GameInstance(
        c_r_cand=c_r,
        c_m_cand=c_m,
        c_m_pos=c_m_pos,
        q_x=rng.uniform(0.0, 0.5, size=n),
        q_xr=rng.uniform(0.5, 1.0, size=n),
        p=p,
    )


def random_mku(seed: int, max_universe: int = 8, max_sets: int = 6) -> tuple[list, list[set], int]:
    """Random set-selection problem sized for exhaustive verification.

    Each set contains its paired element, which is what makes the imitation
    count of the matching game instance equal the union size minus the number
    of sets released.
    """
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, max_universe + 1))
    m = int(rng.integers(1, min(n, max_sets) + 1))
    universe = [f"s{i}" for i in range(n)]
    sets = []
    for j in range(m):
        members = {universe[j]}
        for s in universe:
            if s != universe[j] and rng.random() < 0.35:
                members.add(s)
        sets.append(members)
    k = int(rng.integers(1, m + 1))
    return universe, sets, k


@dataclass(frozen=True)
class GeometricSetup:
    negatives: np.ndarray
    group_masks: tuple[np.ndarray, np.ndarray]
    clf: LinearClassifier
    w_recourse: np.ndarray
    w_manipulation: np.ndarray
    Z: np.ndarray


def random_geometric_setup(seed: int, n: int = 40, d: int = 2) -> GeometricSetup:
    """Random linear classifier, agent cloud, cost weights and revealed set.

    The intercept is placed so that roughly sixty percent of agents classify
    negative, groups split near-evenly, and the revealed set mixes boundary
    projections with deeper positive rows.
    """
    rng = np.random.default_rng(seed)
    w = rng.normal(size=d)
    w /= max(np.linalg.norm(w), 1e-9)
    X = rng.normal(size=(n, d))
    bias = -float(np.quantile(X @ w, 0.6))
    clf = LinearClassifier(weights=w, bias=bias)

    w_r, w_m = random_cost_weights(d, rng)
    preds = clf.predict(X)
    negatives = X[preds == 0]
    positives = X[preds == 1]

    cm0 = CostModel(w_r, w_m, 0.0)
    n_neg = negatives.shape[0]
    proj_idx = rng.choice(n_neg, size=max(1, n_neg // 3), replace=False)
    projections = np.vstack([optimal_recourse(negatives[i], clf, cm0) for i in proj_idx])
    pos_take = positives[: min(3, positives.shape[0])]
    Z = np.vstack([projections, pos_take]) if pos_take.shape[0] else projections

    groups = rng.random(n_neg) < 0.5
    groups[0], groups[1 % n_neg] = False, True
    return GeometricSetup(
        negatives=negatives,
        group_masks=(~groups, groups),
        clf=clf,
        w_recourse=w_r,
        w_manipulation=w_m,
        Z=Z,
    )


def single_crossing_1d_setup(seed: int, n: int = 30) -> GeometricSetup:
    """One-dimensional threshold setting with scalar cost slopes.

    Scalar l2 slopes cross only at zero distance, the regime the utility
    monotonicity claim assumes.
    """
    rng = np.random.default_rng(seed)
    tau = float(rng.uniform(-0.2, 0.6))
    clf = LinearClassifier(weights=np.array([1.0]), bias=-tau)
    negatives = (tau - rng.uniform(0.01, 2.0, size=n))[:, None]
    z_vals = tau + rng.uniform(1e-4, 1.2, size=int(rng.integers(1, 5)))
    w_r = np.array([float(rng.uniform(0.5, 2.0))])
    w_m = np.array([float(rng.uniform(0.5, 2.0))])
    groups = rng.random(n) < 0.5
    groups[0], groups[1] = False, True
    return GeometricSetup(
        negatives=negatives,
        group_masks=(~groups, groups),
        clf=clf,
        w_recourse=w_r,
        w_manipulation=w_m,
        Z=z_vals[:, None],
    )
