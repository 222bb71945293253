"""End to end: a seeded sweep to CSV, then figure panels from the CSV.

The figure step goes through the separate recourse-plots package and touches
nothing but the aggregate file.
"""

import subprocess
import sys

import numpy as np

from recourse_game import ExperimentConfig, run_experiment

cfg = ExperimentConfig(
    synth_n=800,
    runs=8,
    subsidies=(0.0, 0.4, 0.8, 1.0),
    provision_fractions=tuple(round(0.2 * i, 1) for i in range(6)),
    output_dir="out/demo",
)
rows, paths, sign_violations = run_experiment(cfg)
print(f"wrote {len(rows)} rows; wrong-sign actions: {sign_violations}")

# the release-more, get-less-recourse shape at zero subsidy
fractions = sorted({r["provision_fraction"] for r in rows})
for alpha in (0.0, 1.0):
    rec = [np.mean([r["recourse_rate"] for r in rows
                    if r["alpha"] == alpha and r["provision_fraction"] == f])
           for f in fractions]
    print(f"alpha={alpha}: recourse rate by fraction {np.round(rec, 3)}")

result = subprocess.run(
    [sys.executable, "-m", "recourse_plots", paths["aggregate"], "out/demo/figs"],
    capture_output=True, text=True,
)
if result.returncode == 0:
    print("figures:")
    print(result.stdout)
else:
    print(f"figure step skipped: {result.stderr.strip()}")
