"""Bernoulli disclosure of released actions, and what the population does."""

import numpy as np

from recourse_game import (
    CostModel,
    LinearClassifier,
    draw_reveal,
    manipulation_rate,
    optimal_recourse,
    recourse_rate,
)

clf = LinearClassifier(weights=np.array([1.0]), bias=-0.5)
cm = CostModel(np.array([1.4]), np.array([1.0]))
rng = np.random.default_rng(0)

negatives = (0.5 - rng.uniform(0.05, 1.2, size=40))[:, None]
positives = (0.5 + rng.uniform(0.3, 1.5, size=25))[:, None]
released = {i: optimal_recourse(negatives[i], clf, cm) for i in range(0, 40, 2)}

# each released action and each accepted row goes public independently
for p in (0.0, 0.4, 0.7, 1.0):
    state = draw_reveal(released, positives, p=p, seed=7)
    print(f"p={p}: {state.revealed_recourse.shape[0]} released actions public, "
          f"{state.revealed_positives.shape[0]} positives public")

# open-reading rates over one realized public set, swept over subsidies
state = draw_reveal(released, positives, p=0.7, seed=7)
Z = state.public
print("\nsubsidy  recourse  manipulation")
for alpha in (0.0, 0.25, 0.5, 0.75, 1.0):
    model = cm.with_alpha(alpha)
    print(f"  {alpha:.2f}    {recourse_rate(Z, negatives, model):.3f}     "
          f"{manipulation_rate(Z, negatives, model):.3f}")
