"""Sweeping the subsidy with the revealed set held fixed.

Each claim about subsidies (rates rise, burden falls linearly, the group gap
in burden shrinks, the rate gap eventually shrinks, utility never drops) is
checked numerically; a sweep returns its violations instead of asserting.
"""

import numpy as np

from recourse_game import SweepConfig, sweep_subsidy
from recourse_game.fixtures import random_geometric_setup, single_crossing_1d_setup

GRID = np.round(np.linspace(0, 1, 11), 10)
setup = random_geometric_setup(seed=5)


def sweep(metric, grid=GRID, s=setup):
    return sweep_subsidy(SweepConfig(
        negatives=s.negatives, Z=s.Z, w_recourse=s.w_recourse,
        w_manipulation=s.w_manipulation, grid=grid, metric=metric,
        clf=s.clf, group_masks=s.group_masks,
    ))


for metric in ("rec_rate", "social_cost", "diff_cost"):
    res = sweep(metric)
    vals = ", ".join(f"{v:.3f}" for v in res.values)
    print(f"{metric:12s} [{vals}]  violations: {len(res.violations)}")

res = sweep("diff_rec", grid=np.round(np.linspace(0, 1, 101), 10))
print(f"diff_rec     peaks at alpha* = {res.alpha_star:.2f}, "
      f"tail violations: {len(res.violations)}")

res_1d = sweep("utility", s=single_crossing_1d_setup(seed=5))
print(f"utility (1d) [{', '.join(f'{v:+.2f}' for v in res_1d.values)}]  "
      f"violations: {len(res_1d.violations)}")

# the linear-scaling identity behind the burden claims
cost = sweep("social_cost")
base = cost.values[0]
assert all(abs(v - (1 - a) * base) < 1e-9 * max(1, base)
           for a, v in zip(cost.grid, cost.values))
print(f"\nburden at subsidy a equals (1-a) x {base:.3f} exactly")
