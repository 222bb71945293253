import math

import numpy as np
import pytest

from recourse_game import (
    DegenerateTrainingError,
    LinearClassifier,
    Population,
    TrainConfig,
    load_classifier,
    majority_rate,
    save_classifier,
    train_linear,
    training_accuracy,
)


@pytest.fixture
def separable_1d():
    return Population.from_arrays([[0.2], [0.4], [0.6], [0.8]], [0, 0, 1, 1])


def test_train_separable_1d(separable_1d):
    clf = train_linear(separable_1d)
    assert training_accuracy(clf, separable_1d) == 1.0
    # oracle: any threshold in (0.4, 0.6) separates this data perfectly;
    # exhaustive scan of candidate thresholds confirms no other interval does
    xs = np.array([0.2, 0.4, 0.6, 0.8])
    ys = np.array([0, 0, 1, 1])
    perfect = [t for t in np.linspace(0.0, 1.0, 1001)
               if np.all((xs >= t).astype(int) == ys)]
    assert math.isclose(min(perfect), 0.4, abs_tol=2e-3)
    assert math.isclose(max(perfect), 0.6, abs_tol=2e-3)
    boundary = -clf.bias / clf.weights[0]
    assert 0.4 < boundary < 0.6


def test_single_class_raises():
    pop = Population.from_arrays([[0.1], [0.2]], [1, 1])
    with pytest.raises(DegenerateTrainingError):
        train_linear(pop)


def test_same_seed_bit_identical(separable_1d):
    a = train_linear(separable_1d, TrainConfig(seed=9))
    b = train_linear(separable_1d, TrainConfig(seed=9))
    assert np.array_equal(a.weights, b.weights)
    assert a.bias == b.bias


def test_accuracy_beats_majority_on_random_data():
    rng = np.random.default_rng(0)
    X = rng.normal(size=(200, 3))
    y = (X[:, 0] + 0.3 * rng.normal(size=200) > 0.2).astype(int)
    pop = Population.from_arrays(X, y)
    clf = train_linear(pop)
    assert training_accuracy(clf, pop) >= majority_rate(pop)


def test_predict_sign_cases():
    clf = LinearClassifier(weights=np.array([1.0]), bias=-0.5)
    assert clf.predict(np.array([0.6])) == 1
    assert clf.predict(np.array([0.4])) == 0
    # exactly on the boundary classifies positive
    assert clf.predict(np.array([0.5])) == 1


def test_qualification_values():
    clf = LinearClassifier(weights=np.array([1.0]), bias=0.0)
    assert clf.qualification(np.array([0.0])) == 0.5
    assert clf.qualification(np.array([30.0])) > 1 - 1e-9
    assert math.isclose(clf.qualification(np.array([math.log(3.0)])), 0.75, rel_tol=1e-12)


def test_calibration_agrees_with_prediction():
    rng = np.random.default_rng(4)
    clf = LinearClassifier(weights=rng.normal(size=3), bias=float(rng.normal()))
    X = rng.normal(size=(500, 3))
    preds = clf.predict(X)
    q = clf.qualification(X)
    assert np.all(q[preds == 1] >= 0.5)
    assert np.all(q[preds == 0] < 0.5)


def test_qualification_increases_along_weights():
    clf = LinearClassifier(weights=np.array([2.0, -1.0]), bias=0.3)
    x = np.array([0.1, 0.4])
    steps = [clf.qualification(x + t * clf.weights) for t in (0.0, 0.5, 1.0, 2.0)]
    assert all(a < b for a, b in zip(steps, steps[1:]))


def test_classifier_round_trip(tmp_path, separable_1d):
    from recourse_game.model import load_key_value

    clf = train_linear(separable_1d)
    path = tmp_path / "clf.txt"
    save_classifier(clf, path, extras={
        "feature_means": np.array([0.5]),
        "w_recourse": np.array([1.25]),
        "w_manipulation": np.array([0.75]),
    })
    back = load_classifier(path)
    assert np.array_equal(back.weights, clf.weights)
    assert back.bias == clf.bias
    assert back.score_threshold == clf.score_threshold
    fields = load_key_value(path)
    assert fields["w_recourse"] == "1.25"
    assert fields["w_manipulation"] == "0.75"
