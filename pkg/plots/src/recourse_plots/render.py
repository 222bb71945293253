"""Render figure panels from an aggregate sweep CSV.

One image per metric: mean against release fraction, one line per subsidy
level, shaded 95% band. Reads only the documented CSV columns; never touches
the experiment outputs otherwise.
"""

from __future__ import annotations

import argparse
import csv
import os
import sys
from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

METRICS = [
    "recourse_rate",
    "manipulation_rate",
    "social_cost",
    "utility_expected",
    "utility_realized",
    "diff_rec",
    "diff_cost",
]

Y_LABELS = {
    "recourse_rate": "fraction performing recourse",
    "manipulation_rate": "fraction manipulating",
    "social_cost": "social cost",
    "utility_expected": "expected system utility",
    "utility_realized": "realized system utility",
    "diff_rec": "recourse-rate gap between groups",
    "diff_cost": "social-cost gap between groups",
}


class SchemaError(ValueError):
    """The CSV lacks a column a panel needs; message names it."""


@dataclass(frozen=True)
class PanelSpec:
    metric: str

    @property
    def mean_col(self) -> str:
        return f"{self.metric}_mean"

    @property
    def ci_cols(self) -> tuple[str, str]:
        return f"{self.metric}_ci_lo", f"{self.metric}_ci_hi"

    @property
    def y_label(self) -> str:
        return Y_LABELS.get(self.metric, self.metric)


def _parse_cell(value: str):
    if value == "NA" or value == "":
        return None
    try:
        return float(value)
    except ValueError:
        return value


def read_aggregate(csv_path: str) -> list[dict]:
    with open(csv_path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise SchemaError(f"{csv_path}: empty file")
        for col in ("alpha", "provision_fraction"):
            if col not in reader.fieldnames:
                raise SchemaError(f"{csv_path}: missing column {col!r}")
        return [{k: _parse_cell(v) for k, v in row.items()} for row in reader]


def available_panels(rows: list[dict]) -> list[PanelSpec]:
    if not rows:
        raise SchemaError("no data rows")
    columns = set(rows[0])
    panels = []
    for metric in METRICS:
        spec = PanelSpec(metric)
        if spec.mean_col not in columns:
            continue
        for col in spec.ci_cols:
            if col not in columns:
                raise SchemaError(f"missing column {col!r} for metric {metric!r}")
        panels.append(spec)
    if not panels:
        raise SchemaError(f"no known metric columns among {sorted(columns)}")
    return panels


def build_figure(rows: list[dict], spec: PanelSpec):
    """Line-per-subsidy panel with shaded intervals; skips absent values."""
    fig, ax = plt.subplots(figsize=(6, 4))
    subsidies = sorted({r["alpha"] for r in rows})
    for alpha in subsidies:
        pts = [
            (r["provision_fraction"], r[spec.mean_col], *[r[c] for c in spec.ci_cols])
            for r in rows
            if r["alpha"] == alpha and r[spec.mean_col] is not None
        ]
        if not pts:
            continue
        pts.sort()
        x, mean, lo, hi = (np.array(col, dtype=float) for col in zip(*pts))
        line, = ax.plot(x, mean, marker="o", markersize=3, label=f"subsidy {alpha:g}")
        band_lo = np.where(np.isnan(lo), mean, lo)
        band_hi = np.where(np.isnan(hi), mean, hi)
        ax.fill_between(x, band_lo, band_hi, alpha=0.2, color=line.get_color())
    ax.set_xlabel("fraction of agents given a recourse action")
    ax.set_ylabel(spec.y_label)
    ax.legend(fontsize=8)
    fig.tight_layout()
    return fig


def render(csv_path: str, out_dir: str) -> list[str]:
    """Write one PNG per metric present in the CSV; returns the paths."""
    rows = read_aggregate(csv_path)
    os.makedirs(out_dir, exist_ok=True)
    written = []
    for spec in available_panels(rows):
        fig = build_figure(rows, spec)
        path = os.path.join(out_dir, f"{spec.metric}.png")
        fig.savefig(path, dpi=120)
        plt.close(fig)
        written.append(path)
    return written


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="recourse-plots",
        description="Render metric panels from an aggregate sweep CSV.",
    )
    parser.add_argument("csv_path")
    parser.add_argument("out_dir")
    args = parser.parse_args(argv)
    try:
        written = render(args.csv_path, args.out_dir)
    except (SchemaError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    for path in written:
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
