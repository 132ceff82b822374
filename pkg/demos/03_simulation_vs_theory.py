#!/usr/bin/env python3
"""Monte Carlo check of the closed forms, at desk scale.

Generates ensembles over an average-degree grid, then prints simulated
versus theoretical mean and variance for both approximation routes. The
defaults keep this to tens of seconds; pass --reps 200 (or more) and the
full grid for a serious run, e.g.:

    python demos/03_simulation_vs_theory.py --variant unweighted --reps 200

Expect the means to track theory tightly once the average degree clears
~20; the variances are systematic overestimates by design, and at np=10
and below the asymptotic formulas visibly drift from simulation.
"""

import argparse

from edgeoverlap import SimulationSpec, compare_to_theory, run_simulation
from edgeoverlap.nullmodels import Approach, Variant

parser = argparse.ArgumentParser()
parser.add_argument("--variant", choices=[v.value for v in Variant],
                    default="unweighted")
parser.add_argument("--n", type=int, default=1000)
parser.add_argument("--np-grid", default="5,10,20,50,100")
parser.add_argument("--reps", type=int, default=30)
parser.add_argument("--seed", type=int, default=7)
parser.add_argument("--threads", type=int, default=4)
args = parser.parse_args()

variant = Variant(args.variant)
grid = tuple(float(x) / args.n for x in args.np_grid.split(","))
spec = SimulationSpec(variant=variant, n=args.n, p_grid=grid,
                      realizations=args.reps, master_seed=args.seed)
print(f"simulating {variant.value}: n={args.n}, reps={args.reps}, "
      f"np grid {args.np_grid} ...")
summary = run_simulation(spec, threads=args.threads)

for approach in (Approach.TAYLOR, Approach.FIXED_DENOMINATOR):
    print()
    print(f"--- approach {approach.value} ---")
    print(f"{'np':>6} {'sim mean':>10} {'th mean':>10} {'rel':>8}   "
          f"{'sim var':>10} {'th var':>10} {'rel':>8}")
    for row in compare_to_theory(summary, approach):
        if row.theory_error:
            print(f"{row.avg_degree:>6.0f}  theory out of domain: {row.theory_error}")
            continue
        print(f"{row.avg_degree:>6.0f} {row.sim_mean:>10.5f} "
              f"{row.theory_mean:>10.5f} {row.mean_rel_err:>+8.2%}   "
              f"{row.sim_var:>10.3e} {row.theory_var:>10.3e} "
              f"{row.var_rel_err:>+8.2%}")
