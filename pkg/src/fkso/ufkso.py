"""Uniform-tolerance solver with outliers: LP-guided filtering plus a
round-or-cut loop over well-separated-set cuts. Gives a 3-approximation
when every client has the same fault tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import Infeasible, IterationCapExceeded, PreconditionViolated
from .instances import Instance, Solution
from .lpcore import EPS_LP, Cut, build_weak_lp, coverage_of, solve_lp
from .metricops import candidate_radii, dist_rank, nearest_set


@dataclass
class RepAssignment:
    reps: list               # representatives in pick order (R_cov)
    child: dict              # rep -> frozenset of adopted clients
    cov: dict                # the coverage vector the filtering ran on
    r: float


def filter_reps(inst: Instance, cov: dict, r: float) -> RepAssignment:
    """Greedy filtering over positive-coverage clients in decreasing cov
    (ties by min id); each pick absorbs its 2r-ball, so reps end up
    pairwise > 2r apart."""
    unassigned = {v for v in inst.clients if cov.get(v, 0.0) > EPS_LP}
    reps, child = [], {}
    while unassigned:
        j = min(unassigned, key=lambda v: (-cov[v], v))
        reps.append(j)
        kids = frozenset(v for v in unassigned if inst.dist[v, j] <= 2 * r)
        child[j] = kids
        unassigned -= kids
    return RepAssignment(reps=reps, child=child, cov=dict(cov), r=r)


def open_facilities_uniform(inst: Instance, rep: RepAssignment, k: int,
                            ell: int):
    """Open the ell nearest facilities around each of the floor(k/ell) reps
    with the largest child sets (ties by min id). Returns (S_cov, chosen reps)."""
    quota = k // ell
    chosen = sorted(rep.reps, key=lambda j: (-len(rep.child[j]), j))[:quota]
    opened = set()
    for j in chosen:
        opened |= nearest_set(inst, j, inst.facilities, ell)
    return frozenset(opened), chosen


def check_wlcut(rep: RepAssignment, k: int, ell: int) -> Cut | None:
    """The reps form a well-separated set, so their total coverage may not
    exceed floor(k/ell) in any integral solution. Emit that cut when the
    fractional point violates it."""
    total = sum(rep.cov[j] for j in rep.reps)
    if total <= k // ell + EPS_LP:
        return None
    return Cut.make({j: 1 for j in rep.reps}, rhs=k // ell, tag="WLCut")


def solve_ufkso(inst: Instance, collect=None) -> Solution:
    """Ascending scan of candidate radii; per radius, alternate LP re-solves
    with cut additions until the filtered reps satisfy the floor cut, then
    open facilities. Serves >= m clients within 3x the first workable radius.

    `collect`, when given, is a list that receives every emitted Cut
    together with the cov vector that produced it.
    """
    if inst.t != 1:
        raise PreconditionViolated("uniform solver requires t = 1")
    ell = int(inst.ell[0])
    cap = max(4, inst.n * inst.n)
    for r in candidate_radii(inst):
        model = build_weak_lp(inst, r)
        cuts = []
        for _ in range(cap):
            point = solve_lp(model, cuts)
            if point is None:
                break  # radius too small, try next candidate
            cov = coverage_of(point)
            rep = filter_reps(inst, cov, r)
            cut = check_wlcut(rep, inst.k, ell)
            if cut is not None:
                if collect is not None:
                    collect.append((cut, cov))
                if not cut.violated_by(cov):
                    raise IterationCapExceeded(
                        "emitted cut does not cut off the current point")
                cuts.append(cut)
                continue
            opened, chosen = open_facilities_uniform(inst, rep, inst.k, ell)
            served = frozenset(v for j in chosen for v in rep.child[j])
            achieved = max(dist_rank(inst, v, opened, ell) for v in served)
            return Solution(open=opened, served=served, radius_guess=r,
                            achieved=achieved,
                            dilation=achieved / r if r > 0 else 1.0)
        else:
            raise IterationCapExceeded(
                f"round-or-cut exceeded {cap} iterations at r={r}")
    raise Infeasible("no candidate radius admits a solution")
