"""Why optimal release is hard: a set-union problem wearing game clothing.

Pick k sets from a collection; every covered element outside your k picks
becomes an imitator. Minimizing imitators is exactly minimizing the union, so
the release problem inherits the union problem's intractability.
"""

import itertools

from recourse_game import (
    brute_force_min_k_union,
    count_realized_actions,
    min_manipulation_select,
    mku_to_instance,
)

universe = ["s0", "s1", "s2", "s3", "s4"]
sets = [{"s0", "s1"}, {"s1", "s2", "s3"}, {"s2"}, {"s3", "s4"}]
k = 2

inst = mku_to_instance(universe, sets, k)
print(f"{len(universe)} agents, {len(sets)} candidate actions, budget {k}\n")

print("released   union  honest  imitate  idle")
for subset in itertools.combinations(range(len(sets)), k):
    union = set().union(*(sets[j] for j in subset))
    n_rec, n_man, n_idle = count_realized_actions(inst, subset)
    print(f"{subset}     {len(union)}      {n_rec}       {n_man}        {n_idle}")
    assert n_man == len(union) - k

chosen, expected = min_manipulation_select(inst, k)
_, best_union = brute_force_min_k_union(universe, sets, k)
print(f"\nbest release {chosen}: {expected:.0f} imitators "
      f"= minimum union {best_union} - k")
