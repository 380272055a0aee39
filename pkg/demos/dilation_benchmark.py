"""Dilation study: solver radius vs. exact optimum on random instances.

Runs the general round-or-cut solver with each partition strategy over a
stream of small Euclidean instances and tabulates achieved/optimal ratios.
The proven bound is min(4t-1, 2^t+1); in practice the ratios sit well
below it.
"""

import numpy as np

from fkso import exact_opt, gen_random_instance, solve_fkso

COUNT = 30

for t in (1, 2, 3):
    rng = np.random.default_rng(1000 + t)
    ratios = {"chain": [], "forest": [], "best": []}
    for _ in range(COUNT):
        n = int(rng.integers(max(3, t), 10))
        f = int(rng.integers(max(2, t), 7))
        k = int(rng.integers(t, min(4, f) + 1))
        m = int(rng.integers(1, n + 1))
        inst = gen_random_instance(seed=int(rng.integers(2 ** 31)),
                                   n=n, f_count=f, k=k, m=m, t=t)
        opt = exact_opt(inst).opt_radius
        for strategy in ratios:
            sol = solve_fkso(inst, strategy)
            ratios[strategy].append(sol.achieved / opt if opt > 0 else 1.0)

    bound = min(4 * t - 1, 2 ** t + 1)
    print(f"t={t} (proven bound {bound}), {COUNT} instances:")
    for strategy, rs in ratios.items():
        rs = np.array(rs)
        print(f"  {strategy:<6} mean {rs.mean():.3f}  "
              f"median {np.median(rs):.3f}  max {rs.max():.3f}")
