"""Build a population, train the decision rule, inspect its calibration."""

import numpy as np

from recourse_game import (
    SynthSpec,
    majority_rate,
    partition,
    synth_population,
    train_linear,
    training_accuracy,
)

# two label clouds with a margin between them; group g1 sits lower along the
# signal coordinate
pop = synth_population(SynthSpec(n=600, d=2, seed=0))
print(f"{len(pop)} agents, dim {pop.dim}, groups {pop.group_names}")
print(f"label balance: {pop.labels.mean():.2f} positive")

clf = train_linear(pop)
print(f"trained weights {np.round(clf.weights, 3)}, bias {clf.bias:.3f}")
print(f"training accuracy {training_accuracy(clf, pop):.3f} "
      f"(majority rate {majority_rate(pop):.3f})")

positives, negatives = partition(pop, clf)
print(f"{len(positives)} accepted, {len(negatives)} rejected")

# the same model is the probability-of-qualification estimate: every accepted
# agent sits at or above one half, every rejected agent below
q = clf.qualification(pop.features)
print(f"accepted q range [{q[positives].min():.3f}, {q[positives].max():.3f}]")
print(f"rejected q range [{q[negatives].min():.3f}, {q[negatives].max():.3f}]")
