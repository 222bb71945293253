"""Weighted l2 action costs and the subsidy that scales the honest one.

Moving (or claiming to have moved) from x to z costs the norm of the
elementwise-weighted difference. A subsidy alpha in [0, 1] multiplies the
honest-change cost by (1 - alpha) and leaves the misreport cost alone, so it
never changes which target is cheapest, only whether the change is worth it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError


@dataclass(frozen=True)
class CostModel:
    w_recourse: np.ndarray
    w_manipulation: np.ndarray
    alpha: float = 0.0

    def __post_init__(self):
        wr = np.asarray(self.w_recourse, dtype=float)
        wm = np.asarray(self.w_manipulation, dtype=float)
        if wr.shape != wm.shape:
            raise DimensionMismatchError("cost weight vectors disagree on dimension")
        for name, w in (("w_recourse", wr), ("w_manipulation", wm)):
            if not np.all(np.isfinite(w)) or np.any(w < 0):
                raise ValueError(f"{name} must be finite and non-negative")
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must lie in [0, 1], got {self.alpha}")
        object.__setattr__(self, "w_recourse", wr)
        object.__setattr__(self, "w_manipulation", wm)
        wr.setflags(write=False)
        wm.setflags(write=False)

    @property
    def dim(self) -> int:
        return self.w_recourse.shape[0]

    def with_alpha(self, alpha: float) -> "CostModel":
        return CostModel(self.w_recourse, self.w_manipulation, alpha)


def _weighted_norm(w: np.ndarray, x: np.ndarray, z: np.ndarray) -> float:
    x = np.asarray(x, dtype=float)
    z = np.asarray(z, dtype=float)
    if x.shape != z.shape or x.shape[-1] != w.shape[0]:
        raise DimensionMismatchError(
            f"cost arguments have shapes {x.shape} and {z.shape} against dim {w.shape[0]}"
        )
    return float(np.linalg.norm(w * (x - z)))


def recourse_cost(cm: CostModel, x, z) -> float:
    """Subsidized cost of genuinely changing features from x to z."""
    return (1.0 - cm.alpha) * _weighted_norm(cm.w_recourse, x, z)


def manipulation_cost(cm: CostModel, x, z) -> float:
    """Cost of misreporting x as z; subsidies do not apply."""
    return _weighted_norm(cm.w_manipulation, x, z)


def pairwise_costs(w: np.ndarray, X: np.ndarray, Z: np.ndarray) -> np.ndarray:
    """Matrix of weighted l2 distances, rows over X and columns over Z."""
    X = np.atleast_2d(np.asarray(X, dtype=float)) * w
    Z = np.atleast_2d(np.asarray(Z, dtype=float)) * w
    sq = (
        np.sum(X * X, axis=1)[:, None]
        + np.sum(Z * Z, axis=1)[None, :]
        - 2.0 * (X @ Z.T)
    )
    return np.sqrt(np.clip(sq, 0.0, None))


def recourse_cost_matrix(cm: CostModel, X, Z) -> np.ndarray:
    return (1.0 - cm.alpha) * pairwise_costs(cm.w_recourse, X, Z)


def manipulation_cost_matrix(cm: CostModel, X, Z) -> np.ndarray:
    return pairwise_costs(cm.w_manipulation, X, Z)


def random_cost_weights(dim: int, rng: np.random.Generator, low: float = 0.5, high: float = 2.0):
    """Independent per-dimension weights for both cost kinds, uniform in [low, high)."""
    return rng.uniform(low, high, size=dim), rng.uniform(low, high, size=dim)
