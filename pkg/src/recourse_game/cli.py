"""Command-line front end: experiment sweeps, claim checks, fixtures, data."""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace

from .errors import ConfigError
from .harness import ExperimentConfig, SynthSpec, parse_config, run_experiment, synth_population
from .optimizer import (
    brute_force_min_k_union,
    count_realized_actions,
    min_manipulation_select,
    mku_to_instance,
)
from .fixtures import random_mku
from .theory import format_report, run_theorem_suite


def _cmd_run(args) -> int:
    try:
        cfg = parse_config(args.config) if args.config else ExperimentConfig()
        if args.seed is not None:
            cfg = replace(cfg, base_seed=args.seed)
        if args.out is not None:
            cfg = replace(cfg, output_dir=args.out)
        cfg.validate()
        rows, paths, sign_violations = run_experiment(cfg)
    except (ConfigError, ValueError, OSError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {len(rows)} rows to {paths['runs']}")
    print(f"aggregates in {paths['aggregate']}; metadata in {paths['metadata']}")
    print(f"utility-delta sign violations: {sign_violations}")
    return 0


def _cmd_theorems(args) -> int:
    checks = run_theorem_suite(seed=args.seed if args.seed is not None else 0)
    report = format_report(checks)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(report)
    print(report, end="")
    return 0 if all(c.ok for c in checks) else 2


def _cmd_mku(args) -> int:
    seed = args.seed if args.seed is not None else 0
    universe, sets, k = random_mku(seed)
    print(f"universe: {universe}")
    for j, S in enumerate(sets):
        print(f"  set {j}: {sorted(S)}")
    print(f"budget k = {k}")

    inst = mku_to_instance(universe, sets, k)
    chosen, expected_manip = min_manipulation_select(inst, k)
    n_rec, n_man, n_not = count_realized_actions(inst, chosen)
    union = set().union(*(sets[j] for j in chosen)) if chosen else set()
    _, best_union = brute_force_min_k_union(universe, sets, k)
    print(f"released sets {list(chosen)}: union size {len(union)}, "
          f"agents: {n_rec} recourse / {n_man} imitate / {n_not} idle")
    print(f"imitators = union - k: {n_man} = {len(union)} - {k}")
    print(f"enumerated minimum union size: {best_union} "
          f"({'matched' if len(union) == best_union else 'MISMATCH'})")
    return 0 if len(union) == best_union and n_man == len(union) - k else 2


def _cmd_synth(args) -> int:
    spec = SynthSpec(n=args.n, d=args.d, group_shift=args.shift,
                     seed=args.seed if args.seed is not None else 0)
    try:
        pop = synth_population(spec)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    out = args.out or "synthetic.csv"
    header = [f"f{j}" for j in range(spec.d)] + ["label", "group"]
    with open(out, "w", newline="") as fh:
        fh.write(",".join(header) + "\n")
        for i in range(len(pop)):
            cells = [repr(float(v)) for v in pop.features[i]]
            cells += [str(int(pop.labels[i])), str(pop.groups[i])]
            fh.write(",".join(cells) + "\n")
    print(f"wrote {len(pop)} agents to {out}")
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="recourse-game",
        description="Selective recourse disclosure: sweeps, claim checks, fixtures.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a configured experiment sweep")
    p_run.add_argument("--config", help="flat key = value config file")
    p_run.add_argument("--seed", type=int, help="override base_seed")
    p_run.add_argument("--out", help="override output_dir")
    p_run.set_defaults(func=_cmd_run)

    p_thm = sub.add_parser("theorems", help="run every claim check and report violations")
    p_thm.add_argument("--seed", type=int)
    p_thm.add_argument("--out", help="also write the report to this path")
    p_thm.set_defaults(func=_cmd_theorems)

    p_mku = sub.add_parser("mku", help="demonstrate the set-union reduction fixture")
    p_mku.add_argument("--seed", type=int)
    p_mku.set_defaults(func=_cmd_mku)

    p_syn = sub.add_parser("synth", help="emit a synthetic CSV dataset")
    p_syn.add_argument("--out")
    p_syn.add_argument("--seed", type=int)
    p_syn.add_argument("-n", type=int, default=2000)
    p_syn.add_argument("-d", type=int, default=2)
    p_syn.add_argument("--shift", type=float, default=0.5)
    p_syn.set_defaults(func=_cmd_synth)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
