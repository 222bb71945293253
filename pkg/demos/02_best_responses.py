"""One agent's menu: honest change, imitation, or sitting still."""

import numpy as np

from recourse_game import (
    CostModel,
    LinearClassifier,
    final_action,
    optimal_manipulation,
    optimal_recourse,
    recourse_cost,
)

clf = LinearClassifier(weights=np.array([1.0, 0.4]), bias=-0.5)
cm = CostModel(np.array([2.0, 1.0]), np.array([1.0, 1.0]))

x = np.array([0.1, 0.2])
print(f"agent at {x}, score {clf.score(x):.3f} -> rejected")

# cheapest accepted point under the recourse metric: a halfspace projection
z = optimal_recourse(x, clf, cm)
print(f"recommended action {np.round(z, 4)}, cost {recourse_cost(cm, x, z):.4f}")

# the public set offers imitation targets; nearest one under the misreport
# metric wins
Z = np.array([[0.6, 0.1], [0.2, 1.1]])
target, cost = optimal_manipulation(x, Z, cm)
print(f"cheapest imitation {target} at cost {cost:.4f}")

# the three-way choice, with and without a subsidy
for alpha in (0.0, 0.6):
    action = final_action(x, 1, z, Z, cm.with_alpha(alpha), clf)
    print(f"subsidy {alpha}: {action.kind.value} (pays {action.paid_cost:.4f})")

# priced out of both options entirely
far = np.array([-2.5, -1.0])
z_far = optimal_recourse(far, clf, cm)
action = final_action(far, 1, z_far, Z, cm, clf)
print(f"deep agent at {far}: {action.kind.value}")
