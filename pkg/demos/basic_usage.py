"""Walk through the library API on a small random instance.

Generates a Euclidean instance, solves it three ways (greedy threshold
search, uniform LP rounding where applicable, general round-or-cut), and
rechecks every answer against the exhaustive oracle.
"""

import numpy as np

from fkso import (exact_opt, gen_random_instance, solve_fks, solve_fkso,
                  solve_ufkso)

inst = gen_random_instance(seed=42, n=9, f_count=6, k=3, m=6, t=2)
print(f"instance: {inst.n} clients, {inst.f} facilities, "
      f"k={inst.k}, m={inst.m}, fault tolerances {sorted(set(map(int, inst.ell)))}")

orc = exact_opt(inst)
print(f"\nexact optimum (brute force): radius {orc.opt_radius:.3f}, "
      f"open {sorted(orc.open)}")

# greedy threshold search: ignores outliers (serves everyone), 3x guarantee
sol = solve_fks(inst)
print(f"\nfks greedy:   achieved {sol.achieved:.3f} "
      f"({sol.achieved / orc.opt_radius:.2f}x opt), open {sorted(sol.open)}")

# general round-or-cut with both partition builders
sol = solve_fkso(inst, "best")
print(f"round-or-cut: achieved {sol.achieved:.3f} "
      f"({sol.achieved / orc.opt_radius:.2f}x opt), "
      f"serves {len(sol.served)}/{inst.n}")

# the uniform solver needs a single fault-tolerance level
uni = gen_random_instance(seed=42, n=9, f_count=6, k=3, m=6, t=1)
sol = solve_ufkso(uni)
print(f"uniform LP:   achieved {sol.achieved:.3f} on the t=1 variant "
      f"(opt {exact_opt(uni).opt_radius:.3f})")
