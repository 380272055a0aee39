"""The gadget family with an unbounded integrality gap.

k gadgets, each holding k high-tolerance clients (ell = k), one
low-tolerance client (ell = 1), and k facilities; gadgets sit at mutual
distance M >> 1 and m = 2k. Spreading x = 1/k over every facility serves
all small clients fully and every big client to 1/k, so the natural LP is
feasible at radius 1 — but integrally the budget k can fill at most one
gadget, serving k+1 < 2k clients. The round-or-cut loop detects this
through a finite sequence of cuts and certifies the radius guess too small.
"""

from fkso import gen_gap_instance, exact_opt, solve_fkso_at_radius
from fkso.lpcore import build_weak_lp, point_feasible

for k in (2, 3, 4):
    g = gen_gap_instance(k)
    print(f"k={k}: n={g.n}, f={g.f}, m={g.m}")

    # the hand-built fractional point is LP-feasible at radius 1
    point = {("x", i): 1.0 / k for i in g.facilities}
    for v in g.clients:
        point[("cov", v)] = 1.0 if g.ell[v] == 1 else 1.0 / k
    print(f"  fractional point feasible at r=1: "
          f"{point_feasible(build_weak_lp(g, 1.0), point)}")

    # but no integral solution comes close below the cross-gadget distance
    curve = exact_opt(g).coverage_curve
    best_below = max(c for r, c in curve if r < 1000.0)
    print(f"  best integral coverage below cross distance: "
          f"{best_below} of m={g.m}")

    out = solve_fkso_at_radius(g, 1.0)
    print(f"  round-or-cut at r=1: {out.status} "
          f"after {len(out.cuts)} cuts, {out.iterations} iterations")
