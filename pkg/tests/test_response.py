import math

import numpy as np
import pytest

from recourse_game import (
    ActionKind,
    CostModel,
    InfeasibleRecourseError,
    LinearClassifier,
    UndefinedRateError,
    final_action,
    manipulation_rate,
    optimal_manipulation,
    optimal_recourse,
    rates_via_threshold_form,
    recourse_cost,
    recourse_rate,
)

EPS = 1e-6


def cm(w_r, w_m, alpha=0.0):
    return CostModel(np.asarray(w_r, float), np.asarray(w_m, float), alpha)


def halfspace_grid_oracle(x, clf, model, eps, span=3.0, steps=241):
    """Dense search over the feasible halfspace for the cheapest change."""
    x = np.asarray(x, float)
    d = len(x)
    axes = [np.linspace(v - span, v + span, steps) for v in x]
    grids = np.meshgrid(*axes, indexing="ij")
    pts = np.stack([g.ravel() for g in grids], axis=1)
    feasible = pts @ clf.weights + clf.bias >= clf.score_threshold + eps
    pts = pts[feasible]
    costs = np.linalg.norm(model.w_recourse * (pts - x), axis=1)
    j = int(np.argmin(costs))
    return pts[j], (1.0 - model.alpha) * float(costs[j])


def test_1d_projection_is_threshold_point():
    clf = LinearClassifier(weights=np.array([1.0]), bias=-0.5)
    z = optimal_recourse([0.3], clf, cm([1.0], [1.0]), eps=EPS)
    assert math.isclose(z[0], 0.5 + EPS, abs_tol=1e-12)
    assert clf.predict(z) == 1


def test_2d_only_constrained_dimension_moves():
    clf = LinearClassifier(weights=np.array([1.0, 0.0]), bias=-0.5)
    model = cm([1.0, 1.0], [1.0, 1.0])
    z = optimal_recourse([0.2, 0.9], clf, model, eps=EPS)
    assert math.isclose(z[0], 0.5 + EPS, abs_tol=1e-12)
    assert z[1] == 0.9
    _, oracle_cost = halfspace_grid_oracle([0.2, 0.9], clf, model, EPS)
    assert recourse_cost(model, [0.2, 0.9], z) <= oracle_cost + 1e-9


@pytest.mark.parametrize("w_r", [[1.0, 100.0], [100.0, 1.0]])
def test_projection_moves_along_cheap_dimension(w_r):
    clf = LinearClassifier(weights=np.array([1.0, 1.0]), bias=-0.5)
    model = cm(w_r, [1.0, 1.0])
    x = np.array([-0.4, -0.3])
    z = optimal_recourse(x, clf, model, eps=EPS)
    move = np.abs(z - x)
    cheap = int(np.argmin(w_r))
    assert move[cheap] > move[1 - cheap]
    _, oracle_cost = halfspace_grid_oracle(x, clf, model, EPS, span=2.0, steps=321)
    assert recourse_cost(model, x, z) <= oracle_cost + 1e-6


def test_projection_matches_grid_oracle_randomized():
    rng = np.random.default_rng(12)
    for _ in range(10):
        w = rng.normal(size=2)
        if abs(w[0]) + abs(w[1]) < 0.3:
            continue
        clf = LinearClassifier(weights=w, bias=float(rng.normal() * 0.3))
        model = cm(rng.uniform(0.5, 2, 2), rng.uniform(0.5, 2, 2))
        x = rng.normal(size=2)
        if clf.predict(x) == 1:
            continue
        z = optimal_recourse(x, clf, model, eps=EPS)
        assert clf.predict(z) == 1
        _, oracle_cost = halfspace_grid_oracle(x, clf, model, EPS, span=4.0, steps=201)
        assert recourse_cost(model, x, z) <= oracle_cost + 1e-6


def test_zero_recourse_weight_dimension_is_free():
    clf = LinearClassifier(weights=np.array([1.0, 1.0]), bias=-0.5)
    model = cm([0.0, 1.0], [1.0, 1.0])
    x = np.array([-1.0, 0.0])
    z = optimal_recourse(x, clf, model, eps=EPS)
    assert clf.predict(z) == 1
    assert recourse_cost(model, x, z) == 0.0


def test_infeasible_when_classifier_ignores_everything():
    clf = LinearClassifier(weights=np.array([0.0, 0.0]), bias=-0.5)
    with pytest.raises(InfeasibleRecourseError):
        optimal_recourse([0.0, 0.0], clf, cm([1.0, 1.0], [1.0, 1.0]), eps=EPS)


def test_optimal_manipulation_nearest():
    target, cost = optimal_manipulation([0.3], np.array([[0.5], [0.9]]), cm([1.0], [1.0]))
    assert target[0] == 0.5
    assert math.isclose(cost, 0.2, rel_tol=1e-12)


def test_optimal_manipulation_empty():
    assert optimal_manipulation([0.3], np.empty((0, 1)), cm([1.0], [1.0])) is None


def test_optimal_manipulation_tie_lexicographic():
    target, cost = optimal_manipulation([0.3], np.array([[0.5], [0.1]]), cm([1.0], [1.0]))
    assert target[0] == 0.1
    assert math.isclose(cost, 0.2, rel_tol=1e-12)


def fa(x, zeta, Z, w_r, w_m, alpha=0.0, tau=0.5):
    clf = LinearClassifier(weights=np.array([1.0]), bias=-tau)
    model = cm(w_r, w_m, alpha)
    assigned = optimal_recourse(np.asarray(x, float), clf, model, eps=EPS)
    return final_action(np.asarray(x, float), zeta, assigned, np.asarray(Z, float), model, clf)


def test_final_action_manipulate_when_cheaper():
    # honest change costs 2 * 0.2 = 0.4; imitation costs 0.2
    action = fa([0.3], 1, [[0.5]], [2.0], [1.0])
    assert action.kind is ActionKind.MANIPULATE
    assert math.isclose(action.paid_cost, 0.2, rel_tol=1e-9)
    assert action.effective_true_feature[0] == 0.3


def test_final_action_subsidy_flips_to_recourse():
    action = fa([0.3], 1, [[0.5]], [2.0], [1.0], alpha=0.6)
    assert action.kind is ActionKind.RECOURSE
    assert math.isclose(action.paid_cost, 0.4 * 0.4, rel_tol=1e-4)
    assert action.effective_true_feature[0] == action.target[0]


def test_final_action_both_caps_bind():
    action = fa([0.0], 1, [[0.5]], [2.0], [6.0])
    assert action.kind is ActionKind.NOTHING
    assert action.paid_cost == 0.0
    assert action.target is None


def test_final_action_without_provision_cannot_recourse():
    action = fa([0.3], 0, [[0.5]], [1.0], [10.0])
    assert action.kind is ActionKind.NOTHING
    action = fa([0.3], 0, [[0.5]], [1.0], [1.0])
    assert action.kind is ActionKind.MANIPULATE


def test_final_action_tie_goes_to_recourse():
    # equal honest and imitation costs, both under the cutoff
    action = fa([0.3], 1, [[0.5]], [1.0], [1.0])
    assert math.isclose(recourse_cost(cm([1.0], [1.0]), [0.3], [0.5 + EPS]),
                        0.2 + EPS, abs_tol=1e-9)
    assert action.kind is ActionKind.MANIPULATE  # imitation is eps cheaper here
    exact = fa([0.3], 1, [[0.5 + EPS]], [1.0], [1.0])
    assert exact.kind is ActionKind.RECOURSE


def test_final_action_positive_targets_invariant():
    rng = np.random.default_rng(8)
    clf = LinearClassifier(weights=np.array([1.0, -0.5]), bias=0.1)
    model = cm([1.0, 1.0], [0.8, 1.2])
    for _ in range(40):
        x = rng.normal(size=2)
        if clf.predict(x) == 1:
            continue
        Zpts = rng.normal(size=(3, 2)) + np.array([2.0, -2.0])
        Zpts = Zpts[clf.predict(Zpts) == 1]
        assigned = optimal_recourse(x, clf, model, eps=EPS)
        action = final_action(x, 1, assigned, Zpts, model, clf)
        if action.kind is not ActionKind.NOTHING:
            assert clf.predict(action.target) == 1
            assert action.paid_cost < 1.0


def test_final_action_invariant_to_Z_permutation():
    rng = np.random.default_rng(9)
    clf = LinearClassifier(weights=np.array([1.0]), bias=-0.5)
    model = cm([1.5], [1.0])
    Z = np.array([[0.55], [0.7], [0.9]])
    x = np.array([0.2])
    assigned = optimal_recourse(x, clf, model, eps=EPS)
    base = final_action(x, 1, assigned, Z, model, clf)
    for _ in range(5):
        perm = rng.permutation(3)
        other = final_action(x, 1, assigned, Z[perm], model, clf)
        assert other.kind == base.kind
        assert np.array_equal(other.reported_feature, base.reported_feature)


def test_rates_example_and_subsidy_flip():
    negatives = np.array([[0.30], [0.45]])
    Z = np.array([[0.5]])
    assert recourse_rate(Z, negatives, cm([2.0], [1.0])) == 0.0
    assert manipulation_rate(Z, negatives, cm([2.0], [1.0])) == 1.0
    assert recourse_rate(Z, negatives, cm([2.0], [1.0], alpha=0.6)) == 1.0
    assert manipulation_rate(Z, negatives, cm([2.0], [1.0], alpha=0.6)) == 0.0


def test_rates_empty_reveal_and_empty_negatives():
    negatives = np.array([[0.30], [0.45]])
    assert recourse_rate(np.empty((0, 1)), negatives, cm([2.0], [1.0])) == 0.0
    assert manipulation_rate(np.empty((0, 1)), negatives, cm([2.0], [1.0])) == 0.0
    with pytest.raises(UndefinedRateError):
        recourse_rate(np.array([[0.5]]), np.empty((0, 1)), cm([2.0], [1.0]))


def test_rates_sum_at_most_one_and_monotone_in_alpha():
    rng = np.random.default_rng(10)
    for _ in range(25):
        w_r, w_m = rng.uniform(0.5, 2, 2), rng.uniform(0.5, 2, 2)
        negatives = rng.normal(size=(15, 2))
        Z = rng.normal(size=(4, 2)) + 1.0
        prev = -1.0
        for alpha in np.linspace(0, 1, 11):
            model = cm(w_r, w_m, float(alpha))
            r = recourse_rate(Z, negatives, model)
            m = manipulation_rate(Z, negatives, model)
            assert r + m <= 1.0 + 1e-12
            assert r >= prev - 1e-12
            prev = r


def test_threshold_form_agrees_exactly():
    rng = np.random.default_rng(11)
    for _ in range(20):
        w_r, w_m = rng.uniform(0.5, 2, 2), rng.uniform(0.5, 2, 2)
        base = cm(w_r, w_m)
        negatives = rng.normal(size=(12, 2))
        Z = rng.normal(size=(3, 2)) + 1.2
        for alpha in np.linspace(0, 1, 11):
            direct = (recourse_rate(Z, negatives, base.with_alpha(float(alpha))),
                      manipulation_rate(Z, negatives, base.with_alpha(float(alpha))))
            via_threshold = rates_via_threshold_form(Z, negatives, base, float(alpha))
            assert direct == via_threshold
