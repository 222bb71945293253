"""Bernoulli disclosure of released actions and initially positive features."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class RevealState:
    """One realized draw of the public set.

    ``selected_recourse`` maps agent id to the action the system released for
    it; ``revealed_recourse`` / ``revealed_positives`` are the deduplicated
    feature rows that actually became public; their union is the set agents
    can imitate.
    """

    selected_recourse: dict[int, np.ndarray]
    revealed_recourse: np.ndarray
    revealed_positives: np.ndarray
    revealed_recourse_ids: tuple[int, ...]
    p: float
    seed: int

    @property
    def public(self) -> np.ndarray:
        """All revealed rows, released actions first."""
        parts = [a for a in (self.revealed_recourse, self.revealed_positives) if a.shape[0]]
        if not parts:
            return np.empty((0, self._dim()))
        return np.vstack(parts)

    def _dim(self) -> int:
        if self.revealed_recourse.shape[0]:
            return self.revealed_recourse.shape[1]
        if self.revealed_positives.shape[0]:
            return self.revealed_positives.shape[1]
        for v in self.selected_recourse.values():
            return len(v)
        return 0


def _dedupe_rows(rows: list[np.ndarray], dim: int) -> np.ndarray:
    seen = set()
    out = []
    for r in rows:
        key = tuple(r.tolist())
        if key not in seen:
            seen.add(key)
            out.append(r)
    if not out:
        return np.empty((0, dim))
    return np.vstack(out)


def draw_reveal(selected_recourse: dict[int, np.ndarray], positives, p: float, seed: int) -> RevealState:
    """Include each released action and each positive row independently with
    probability p.

    One uniform is consumed per element, released actions first in agent-id
    order and then positive rows in their row order, so a draw replays exactly
    from (inputs, seed) and raising p with the same seed only ever adds
    elements.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    positives = np.atleast_2d(np.asarray(positives, dtype=float)) if positives is not None else None
    if positives is None or positives.size == 0:
        dim = next((len(v) for v in selected_recourse.values()), 0)
        positives = np.empty((0, dim))
    dim = positives.shape[1] if positives.shape[0] else next(
        (len(v) for v in selected_recourse.values()), 0
    )

    rng = np.random.default_rng(seed)
    ids = sorted(selected_recourse)
    draws = rng.random(len(ids) + positives.shape[0])

    kept_ids = [i for j, i in enumerate(ids) if draws[j] < p]
    kept_rows = [np.asarray(selected_recourse[i], dtype=float) for i in kept_ids]
    kept_pos = [positives[j] for j in range(positives.shape[0]) if draws[len(ids) + j] < p]

    return RevealState(
        selected_recourse={i: np.asarray(v, dtype=float) for i, v in selected_recourse.items()},
        revealed_recourse=_dedupe_rows(kept_rows, dim),
        revealed_positives=_dedupe_rows(kept_pos, dim),
        revealed_recourse_ids=tuple(kept_ids),
        p=p,
        seed=seed,
    )
