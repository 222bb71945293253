import itertools
import math

import numpy as np
import pytest

from recourse_game import (
    GameInstance,
    UnsupportedModeError,
    brute_force_min_k_union,
    brute_force_select,
    count_realized_actions,
    dump_instance,
    enumeration_utility,
    exact_ilp_p1,
    expected_manipulation_prob,
    expected_manipulators,
    expected_utility,
    greedy_select,
    load_instance,
    local_search_select,
    manipulation_sets,
    min_manipulation_select,
    mku_to_instance,
    monte_carlo_utility,
    realized_actions,
    recourse_count_p1,
    total_manipulation_exposure,
)
from recourse_game.fixtures import random_mku, random_table_instance


def single_agent_instance(own_cost, q_x, q_xr, c_m_own=5.0, pos_cost=None, p=1.0):
    return GameInstance(
        c_r_cand=np.array([[own_cost]]),
        c_m_cand=np.array([[c_m_own]]),
        c_m_pos=np.array([[pos_cost]]) if pos_cost is not None else None,
        q_x=np.array([q_x]),
        q_xr=np.array([q_xr]),
        p=p,
    )


def test_recourse_delta():
    inst = single_agent_instance(own_cost=0.3, q_x=0.2, q_xr=0.8)
    assert math.isclose(expected_utility((0,), inst), 0.6, rel_tol=1e-12)


def test_manipulation_delta():
    inst = single_agent_instance(own_cost=0.3, q_x=0.3, q_xr=0.8, pos_cost=0.2)
    assert math.isclose(expected_utility((), inst), -0.4, rel_tol=1e-12)


def test_empty_release_no_positives_is_zero():
    inst = single_agent_instance(own_cost=0.3, q_x=0.3, q_xr=0.8)
    assert expected_utility((), inst) == 0.0


def diverter_instance(p):
    # agent 0: own action costs 0.9; columns 1 and 2 divert it (0.5 < 0.9)
    c_r = np.full((3, 3), 2.0)
    np.fill_diagonal(c_r, [0.9, 0.2, 0.2])
    c_m = np.array([
        [5.0, 0.5, 0.5],
        [5.0, 5.0, 5.0],
        [5.0, 5.0, 5.0],
    ])
    return GameInstance(c_r_cand=c_r, c_m_cand=c_m,
                        q_x=np.full(3, 0.3), q_xr=np.full(3, 0.8), p=p)


def test_expected_manipulation_prob_values():
    inst = diverter_instance(p=0.7)
    sets = manipulation_sets(inst)
    assert sets[0] == frozenset({1, 2})
    assert math.isclose(expected_manipulation_prob(inst, 0, (1, 2)), 0.91, rel_tol=1e-12)
    assert expected_manipulation_prob(inst, 0, (1, 2), p=0.0) == 0.0
    assert expected_manipulation_prob(inst, 0, (1, 2), p=1.0) == 1.0
    assert expected_manipulation_prob(inst, 1, (1, 2)) == 0.0


def test_exposure_is_sum_of_agent_probs():
    inst = diverter_instance(p=0.7)
    val = total_manipulation_exposure(inst, (1, 2))
    assert math.isclose(val, 0.91, rel_tol=1e-12)


def test_recourse_iff_diverter_set_disjoint():
    # gated play with everything released: agents with an affordable own
    # action take it exactly when no released column undercuts it
    for seed in range(25):
        inst = random_table_instance(seed, n=7, p=1.0)
        sets = manipulation_sets(inst)
        own = inst.own_cost()
        chosen = tuple(range(7))
        kinds = realized_actions(inst, set(chosen), set(chosen))
        for i in range(7):
            if own[i] < 1.0:
                assert (kinds[i] == 1) == (len(sets[i] & set(chosen)) == 0)


def test_enumeration_equals_factored_form():
    for seed in range(15):
        inst = random_table_instance(seed, n=6, p=0.6, n_positives=2)
        chosen = tuple(np.random.default_rng(seed).choice(6, size=3, replace=False))
        exact = enumeration_utility(chosen, inst)
        from recourse_game.optimizer import _factored_expectation

        fact = _factored_expectation(sorted(set(chosen)), inst, set(chosen), "utility")
        assert math.isclose(exact, fact, rel_tol=1e-10, abs_tol=1e-12)


def test_enumeration_matches_monte_carlo():
    inst = random_table_instance(3, n=6, p=0.7, n_positives=2)
    chosen = (0, 2, 4)
    exact = enumeration_utility(chosen, inst)
    est, stderr = monte_carlo_utility(chosen, inst, samples=4000, seed=11)
    assert abs(est - exact) <= 3 * stderr


def test_brute_force_k0():
    inst = diverter_instance(p=0.7)
    subset, value = brute_force_select(inst, 0)
    assert subset == ()
    assert value == expected_utility((), inst)


def exact_selector_example():
    # two agents, own costs 0.2 and 2.0; releasing the second action only
    # tempts the first agent into imitation
    return GameInstance(
        c_r_cand=np.array([[0.2, 1.0], [1.0, 2.0]]),
        c_m_cand=np.array([[5.0, 0.1], [1.5, 5.0]]),
        q_x=np.array([0.3, 0.3]),
        q_xr=np.array([0.9, 0.9]),
        p=1.0,
    )


def test_exact_selector_two_agent_example():
    inst = exact_selector_example()
    subset, value = exact_ilp_p1(inst, 1)
    assert subset == (0,)
    assert value == 1
    # enumeration oracle over both singletons
    assert recourse_count_p1(inst, (0,)) == 1
    assert recourse_count_p1(inst, (1,)) == 0
    # utility agrees on the ranking here
    best, _ = brute_force_select(inst, 1)
    assert best == (0,)


def test_exact_selector_all_slack():
    rng = np.random.default_rng(0)
    n = 5
    c_r = rng.uniform(1.2, 2.0, size=(n, n))
    np.fill_diagonal(c_r, rng.uniform(0.05, 0.6, size=n))
    inst = GameInstance(c_r_cand=c_r, c_m_cand=np.full((n, n), 1.5),
                        q_x=np.full(n, 0.2), q_xr=np.full(n, 0.9), p=1.0)
    subset, value = exact_ilp_p1(inst, n)
    assert subset == tuple(range(n))
    assert value == n


def test_exact_selector_k0():
    inst = exact_selector_example()
    subset, value = exact_ilp_p1(inst, 0)
    assert subset == ()
    assert value == 0


def test_exact_selector_requires_certain_disclosure():
    inst = diverter_instance(p=0.7)
    with pytest.raises(UnsupportedModeError):
        exact_ilp_p1(inst, 1)


def test_exact_selector_matches_enumeration_many_seeds():
    for seed in range(40):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(3, 9))
        inst = random_table_instance(seed, n=n, p=1.0)
        k = int(rng.integers(0, min(3, n) + 1))
        _, val = exact_ilp_p1(inst, k)
        best = max(recourse_count_p1(inst, c)
                   for c in itertools.combinations(range(n), k))
        assert val == best


def test_greedy_equals_brute_force_on_modular_instance():
    # imitation impossible anywhere: each released action only triggers its
    # own agent, so the objective is a sum of per-candidate gains
    rng = np.random.default_rng(7)
    n = 6
    c_r = rng.uniform(1.5, 3.0, size=(n, n))
    np.fill_diagonal(c_r, rng.uniform(0.05, 0.8, size=n))
    inst = GameInstance(c_r_cand=c_r, c_m_cand=np.full((n, n), 2.0),
                        q_x=rng.uniform(0.0, 0.5, size=n),
                        q_xr=rng.uniform(0.55, 1.0, size=n), p=0.7)
    for k in (1, 2, 4, 6):
        g = greedy_select(inst, k)
        b, bval = brute_force_select(inst, k)
        assert math.isclose(expected_utility(g, inst), bval, rel_tol=1e-12)
        assert set(g) == set(b)


def test_local_search_at_least_greedy():
    for seed in range(15):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(4, 9))
        inst = random_table_instance(seed + 100, n=n, p=0.7)
        k = int(rng.integers(1, 5))
        g = greedy_select(inst, k)
        ls = local_search_select(inst, k)
        assert expected_utility(ls, inst) >= expected_utility(g, inst) - 1e-12


def test_local_search_matches_brute_force_on_union_fixtures():
    for seed in range(10):
        universe, sets, k = random_mku(seed, max_universe=6, max_sets=4)
        inst = mku_to_instance(universe, sets, k)
        ls = local_search_select(inst, k)
        _, bval = brute_force_select(inst, k)
        assert math.isclose(expected_utility(ls, inst), bval, rel_tol=1e-12)


def test_union_fixture_worked_example():
    universe = ["s1", "s2", "s3"]
    sets = [{"s1", "s2"}, {"s2", "s3"}]
    inst = mku_to_instance(universe, sets, 1)
    # release the first set's action: its agent moves, the shared element's
    # agent imitates, the last agent idles
    kinds = realized_actions(inst, {0}, {0})
    assert kinds.tolist() == [1, -1, 0]
    n_rec, n_man, n_not = count_realized_actions(inst, (0,))
    assert (n_rec, n_man, n_not) == (1, 1, 1)
    assert n_man == len(sets[0]) - 1


def test_union_fixture_disjoint_sets():
    universe = [f"s{i}" for i in range(6)]
    sets = [{"s0", "s3"}, {"s1", "s4"}, {"s2", "s5"}]
    inst = mku_to_instance(universe, sets, 3)
    _, n_man, _ = count_realized_actions(inst, (0, 1, 2))
    assert n_man == sum(len(S) for S in sets) - 3


def test_union_identity_and_optimum_across_seeds():
    for seed in range(30):
        universe, sets, k = random_mku(seed)
        inst = mku_to_instance(universe, sets, k)
        for subset in itertools.combinations(range(len(sets)), k):
            union = set().union(*(sets[j] for j in subset))
            _, n_man, _ = count_realized_actions(inst, subset)
            assert n_man == len(union) - k
        (_, best_manip) = min_manipulation_select(inst, k)
        (_, best_union) = brute_force_min_k_union(universe, sets, k)
        assert int(round(best_manip)) == best_union - k


def test_expected_manipulators_matches_count_at_p1():
    for seed in range(10):
        inst = random_table_instance(seed, n=6, p=1.0)
        chosen = tuple(np.random.default_rng(seed).choice(6, size=3, replace=False))
        _, n_man, _ = count_realized_actions(inst, chosen)
        assert math.isclose(expected_manipulators(inst, chosen), n_man, rel_tol=1e-12)


def test_sign_property_every_outcome_geometric():
    # realized deltas keep their signs in every disclosure outcome when the
    # score is calibrated
    from recourse_game import (
        CostModel,
        LinearClassifier,
        build_geometric_instance,
    )

    rng = np.random.default_rng(21)
    for _ in range(5):
        w = rng.normal(size=2)
        w /= max(np.linalg.norm(w), 1e-9)
        clf = LinearClassifier(weights=w, bias=float(rng.normal() * 0.2))
        X = rng.normal(size=(14, 2))
        negatives = X[clf.predict(X) == 0][:5]
        positives = X[clf.predict(X) == 1][:2]
        if negatives.shape[0] < 2 or positives.shape[0] < 1:
            continue
        cm = CostModel(rng.uniform(0.5, 2, 2), rng.uniform(0.5, 2, 2), 0.0)
        inst, _ = build_geometric_instance(negatives, positives, clf, cm, p=0.7)
        chosen = tuple(range(negatives.shape[0]))
        for bits in itertools.product((0, 1), repeat=len(chosen) + positives.shape[0]):
            rev = {c for c, b in zip(chosen, bits[: len(chosen)]) if b}
            pos_mask = np.array(bits[len(chosen):], dtype=bool)
            kinds = realized_actions(inst, set(chosen), rev, pos_mask)
            assert np.all(2 * inst.q_xr[kinds == 1] - 1 >= -1e-12)
            assert np.all(2 * inst.q_x[kinds == -1] - 1 <= 1e-12)


def test_instance_round_trip(tmp_path):
    inst = random_table_instance(9, n=5, p=0.7, n_positives=2)
    path = tmp_path / "inst.txt"
    dump_instance(inst, path)
    back = load_instance(path)
    assert np.array_equal(back.c_r_cand, inst.c_r_cand)
    assert np.array_equal(back.c_m_cand, inst.c_m_cand)
    assert np.array_equal(back.c_m_pos, inst.c_m_pos)
    assert np.array_equal(back.q_x, inst.q_x)
    assert np.array_equal(back.q_xr, inst.q_xr)
    assert back.p == inst.p
    assert np.array_equal(back.own_candidate, inst.own_candidate)
