"""Agent populations: loading, validation, standardization, partitioning."""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DimensionMismatchError,
    EmptyInputError,
    ParseError,
    SchemaError,
)


@dataclass(frozen=True)
class Agent:
    """One individual: feature vector, binary label, group tag, stable id."""

    id: int
    features: np.ndarray
    label: int
    group: str

    def __post_init__(self):
        feats = np.asarray(self.features, dtype=float)
        if not np.all(np.isfinite(feats)):
            raise ValueError(f"agent {self.id}: non-finite feature vector")
        if self.label not in (0, 1):
            raise ValueError(f"agent {self.id}: label must be 0 or 1, got {self.label}")
        object.__setattr__(self, "features", feats)
        feats.setflags(write=False)


@dataclass(frozen=True)
class ColumnSchema:
    """Names the feature columns, the label column, and the group column of a CSV."""

    features: tuple[str, ...]
    label: str
    group: str


class Population:
    """An ordered, immutable collection of agents sharing one feature space.

    Row order is identity: ``agents[i].id == i``. Feature matrix, labels and
    group tags are exposed as read-only numpy arrays for vectorized work.
    """

    def __init__(self, agents: list[Agent], standardization: tuple[np.ndarray, np.ndarray] | None = None):
        if not agents:
            raise EmptyInputError("population must contain at least one agent")
        dims = {a.features.shape[0] for a in agents}
        if len(dims) != 1:
            raise DimensionMismatchError(f"agents disagree on dimension: {sorted(dims)}")
        ids = [a.id for a in agents]
        if len(set(ids)) != len(ids):
            raise ValueError("agent ids must be unique")
        self.agents = tuple(agents)
        self.dim = dims.pop()
        self.features = np.stack([a.features for a in agents])
        self.labels = np.array([a.label for a in agents], dtype=int)
        self.groups = np.array([a.group for a in agents])
        self.ids = np.array(ids, dtype=int)
        self.group_names = sorted(set(self.groups.tolist()))
        self.standardization = standardization
        for arr in (self.features, self.labels, self.groups, self.ids):
            arr.setflags(write=False)

    def __len__(self) -> int:
        return len(self.agents)

    @classmethod
    def from_arrays(cls, features, labels, groups=None, standardization=None) -> "Population":
        features = np.asarray(features, dtype=float)
        if features.ndim == 1:
            features = features[:, None]
        labels = np.asarray(labels, dtype=int)
        if groups is None:
            groups = ["all"] * len(labels)
        agents = [
            Agent(id=i, features=features[i], label=int(labels[i]), group=str(groups[i]))
            for i in range(len(labels))
        ]
        return cls(agents, standardization=standardization)

    def group_mask(self, name: str) -> np.ndarray:
        return self.groups == name


def standardize_columns(raw: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Zero-mean unit-variance per column; constant columns map to all zeros."""
    mean = raw.mean(axis=0)
    std = raw.std(axis=0)
    safe = np.where(std > 0, std, 1.0)
    out = (raw - mean) / safe
    out[:, std == 0] = 0.0
    return out, mean, std


def load_population(path, schema: ColumnSchema, standardize: bool = True) -> Population:
    """Read a CSV of agents and return a standardized Population.

    The header must contain every column named by ``schema``. Features are
    parsed as decimal reals; the label cell must be exactly "0" or "1".
    Standardization constants are kept on the returned Population so a run
    can be reproduced from its metadata.
    """
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise EmptyInputError(f"{path}: empty file")
        missing = [
            c
            for c in (*schema.features, schema.label, schema.group)
            if c not in reader.fieldnames
        ]
        if missing:
            raise SchemaError(f"{path}: missing columns {missing}")

        feats, labels, groups = [], [], []
        for idx, row in enumerate(reader):
            vals = []
            for c in schema.features:
                try:
                    vals.append(float(row[c]))
                except (TypeError, ValueError):
                    raise ParseError(f"{path}: row {idx}: non-numeric value {row[c]!r} in column {c!r}")
            lab = row[schema.label]
            if lab not in ("0", "1"):
                raise ParseError(f"{path}: row {idx}: label must be '0' or '1', got {lab!r}")
            feats.append(vals)
            labels.append(int(lab))
            groups.append(row[schema.group])

    if not feats:
        raise EmptyInputError(f"{path}: no data rows")

    raw = np.asarray(feats, dtype=float)
    if standardize:
        std_feats, mean, std = standardize_columns(raw)
        constants = (mean, std)
    else:
        std_feats, constants = raw, None
    return Population.from_arrays(std_feats, labels, groups, standardization=constants)


def partition(pop: Population, clf) -> tuple[list[int], list[int]]:
    """Split agent ids into (positives, negatives) under the classifier."""
    if clf.dim != pop.dim:
        raise DimensionMismatchError(f"classifier dim {clf.dim} != population dim {pop.dim}")
    preds = clf.predict(pop.features)
    positives = [int(i) for i in pop.ids[preds == 1]]
    negatives = [int(i) for i in pop.ids[preds == 0]]
    return positives, negatives
