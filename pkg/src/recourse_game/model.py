"""Linear classifier: training, prediction, and the calibrated score it induces.

The same logistic model plays two roles: the fixed decision rule (sign of the
score against a threshold) and the probability-of-qualification estimate used
everywhere utilities are computed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateTrainingError, DimensionMismatchError
from .population import Population


@dataclass(frozen=True)
class TrainConfig:
    learning_rate: float = 0.1
    epochs: int = 500
    l2_penalty: float = 1e-4
    seed: int = 0


@dataclass(frozen=True)
class LinearClassifier:
    weights: np.ndarray
    bias: float
    score_threshold: float = 0.0

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        if not np.all(np.isfinite(w)):
            raise ValueError("classifier weights must be finite")
        object.__setattr__(self, "weights", w)
        w.setflags(write=False)

    @property
    def dim(self) -> int:
        return self.weights.shape[0]

    def _check_dim(self, x: np.ndarray):
        if x.shape[-1] != self.dim:
            raise DimensionMismatchError(f"expected dim {self.dim}, got {x.shape[-1]}")

    def score(self, x) -> np.ndarray | float:
        x = np.asarray(x, dtype=float)
        self._check_dim(x)
        out = x @ self.weights + self.bias
        return float(out) if out.ndim == 0 else out

    def predict(self, x):
        """1 iff score >= threshold; boundary points classify positive."""
        s = self.score(x)
        if np.isscalar(s):
            return int(s >= self.score_threshold)
        return (s >= self.score_threshold).astype(int)

    def qualification(self, x):
        """Calibrated probability of a positive label, logistic in the score."""
        s = self.score(x)
        return _sigmoid(s)


def _sigmoid(s):
    s = np.asarray(s, dtype=float)
    out = np.empty_like(s)
    pos = s >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-s[pos]))
    es = np.exp(s[~pos])
    out[~pos] = es / (1.0 + es)
    return float(out) if out.ndim == 0 else out


def predict(clf: LinearClassifier, x):
    return clf.predict(x)


def qualification(clf: LinearClassifier, x):
    return clf.qualification(x)


def train_linear(pop: Population, config: TrainConfig = TrainConfig()) -> LinearClassifier:
    """Fit logistic weights by full-batch gradient descent.

    Deterministic given the config seed. Raises DegenerateTrainingError when
    all labels agree, since no decision boundary separates anything then.
    """
    X, y = pop.features, pop.labels
    if len(set(y.tolist())) < 2:
        raise DegenerateTrainingError("training data contains a single class")

    rng = np.random.default_rng(config.seed)
    w = rng.normal(0.0, 0.01, size=pop.dim)
    b = 0.0
    n = len(y)
    for _ in range(config.epochs):
        probs = _sigmoid(X @ w + b)
        err = probs - y
        grad_w = X.T @ err / n + config.l2_penalty * w
        grad_b = float(err.mean())
        w = w - config.learning_rate * grad_w
        b = b - config.learning_rate * grad_b
    return LinearClassifier(weights=w, bias=float(b))


def training_accuracy(clf: LinearClassifier, pop: Population) -> float:
    return float((clf.predict(pop.features) == pop.labels).mean())


def majority_rate(pop: Population) -> float:
    ones = pop.labels.mean()
    return float(max(ones, 1.0 - ones))


def save_classifier(clf: LinearClassifier, path, extras: dict | None = None):
    """Plain-text key=value dump; floats use repr so reloads are bit-exact."""
    lines = [
        "weights = " + ",".join(repr(float(v)) for v in clf.weights),
        "bias = " + repr(float(clf.bias)),
        "score_threshold = " + repr(float(clf.score_threshold)),
    ]
    for key, val in (extras or {}).items():
        if isinstance(val, np.ndarray):
            val = ",".join(repr(float(v)) for v in val)
        lines.append(f"{key} = {val}")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def load_key_value(path) -> dict[str, str]:
    """Raw key=value fields of a classifier dump, extras included."""
    fields = {}
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, _, val = line.partition("=")
            fields[key.strip()] = val.strip()
    return fields


def load_classifier(path) -> LinearClassifier:
    fields = load_key_value(path)
    weights = np.array([float(v) for v in fields["weights"].split(",")])
    return LinearClassifier(
        weights=weights,
        bias=float(fields["bias"]),
        score_threshold=float(fields["score_threshold"]),
    )
