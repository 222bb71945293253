"""Choosing which actions to release: greedy, local search, exact companions."""

import numpy as np

from recourse_game import (
    CostModel,
    LinearClassifier,
    brute_force_select,
    build_geometric_instance,
    exact_ilp_p1,
    expected_manipulators,
    expected_utility,
    greedy_select,
    local_search_select,
    recourse_count_p1,
)

rng = np.random.default_rng(3)
clf = LinearClassifier(weights=np.array([1.0, 0.3]), bias=0.0)
cm = CostModel(rng.uniform(0.5, 2, 2), rng.uniform(0.5, 2, 2))

X = rng.normal(size=(40, 2))
negatives = X[clf.predict(X) == 0][:10]
positives = X[clf.predict(X) == 1][:3]

inst, actions = build_geometric_instance(negatives, positives, clf, cm, p=0.7)
print(f"instance: {inst.n_agents} rejected agents, {inst.n_candidates} candidate actions")

k = 4
greedy = greedy_select(inst, k)
local = local_search_select(inst, k)
exact, exact_val = brute_force_select(inst, k)
print(f"greedy       {greedy}  utility {expected_utility(greedy, inst):+.4f}")
print(f"local search {local}  utility {expected_utility(local, inst):+.4f}")
print(f"brute force  {exact}  utility {exact_val:+.4f}")

# at certain disclosure, the recourse-count objective has an exact solver
inst.p = 1.0
subset, count = exact_ilp_p1(inst, k)
print(f"\ncertain disclosure: releasing {subset} gets {count} honest changes")
print(f"(check: {recourse_count_p1(inst, subset)} realized, "
      f"{expected_manipulators(inst, subset):.2f} imitators)")
