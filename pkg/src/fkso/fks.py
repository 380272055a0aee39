"""Outlier-free fault-tolerant solver: greedy rep picking in decreasing
fault-tolerance order, opening ell_j facilities per rep, plus the radius
search. Gives a 3-approximation.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import Infeasible
from .instances import Instance, Solution
from .metricops import ball, candidate_radii, dist_rank, nearest_set


@dataclass
class FksRun:
    reps: list              # representatives in pick order
    child: dict             # rep -> frozenset of adopted clients
    open: frozenset         # opened facilities (empty when infeasible)
    feasible: bool
    r: float


def solve_fks_at_radius(inst: Instance, r: float) -> FksRun:
    """One pass of the greedy at radius r. Infeasible when some rep lacks
    ell_j facilities within r, or total demand over reps exceeds k."""
    unassigned = set(inst.clients)
    reps, child, opened = [], {}, set()
    demand = 0
    feasible = True
    while unassigned:
        # max ell, ties by min client id
        j = min(unassigned, key=lambda v: (-inst.ell[v], v))
        reps.append(j)
        kids = frozenset(v for v in unassigned if inst.dist[v, j] <= 2 * r)
        child[j] = kids
        unassigned -= kids
        lj = int(inst.ell[j])
        demand += lj
        if len(ball(inst, j, r, inst.facilities)) < lj or demand > inst.k:
            feasible = False
            continue
        opened |= nearest_set(inst, j, inst.facilities, lj)
    if not feasible:
        opened = set()
    return FksRun(reps=reps, child=child, open=frozenset(opened),
                  feasible=feasible, r=r)


def solve_fks(inst: Instance) -> Solution:
    """Smallest candidate radius with a feasible run; serves every client
    within 3x that radius.

    Binary search is used first; feasibility is not proven monotone in r for
    this greedy, so any non-monotone pattern among probed radii triggers a
    fallback to a full ascending scan.
    """
    radii = candidate_radii(inst)
    probes = {}

    def feasible_at(idx):
        if idx not in probes:
            probes[idx] = solve_fks_at_radius(inst, radii[idx])
        return probes[idx].feasible

    lo, hi = 0, len(radii) - 1
    if not feasible_at(hi):
        raise Infeasible("no candidate radius admits a feasible run")
    while lo < hi:
        mid = (lo + hi) // 2
        if feasible_at(mid):
            hi = mid
        else:
            lo = mid + 1
    # Detect non-monotone probe pattern: feasible below an infeasible probe.
    probed = sorted(probes)
    monotone = all(
        not (probes[a].feasible and not probes[b].feasible)
        for ai, a in enumerate(probed) for b in probed[ai + 1:])
    if not monotone:
        lo = next(i for i in range(len(radii)) if feasible_at(i))
    run = probes[lo]
    achieved = max(
        dist_rank(inst, v, run.open, int(inst.ell[v])) for v in inst.clients)
    return Solution(open=run.open, served=frozenset(inst.clients),
                    radius_guess=radii[lo], achieved=achieved,
                    dilation=achieved / radii[lo] if radii[lo] > 0 else 1.0)
