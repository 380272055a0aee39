"""General solver for mixed fault tolerances.

A round-or-cut loop over the cov-space polytope: build a partition of the
positive-coverage clients whose parts have bounded radius (a "good
partition"), solve a budgeting DP over the parts, and either open facilities
(round) or emit a valid inequality that the current fractional point
violates (cut). Two partition builders are available: a chain-style one with
radius parameter 4t-2 and a forest-style one with radius parameter 2^t,
where t is the number of distinct fault-tolerance values.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import Infeasible, IterationCapExceeded, PreconditionViolated
from .instances import Instance, Solution
from .lpcore import EPS_LP, Cut, build_cov_polytope, coverage_of, solve_lp
from .metricops import candidate_radii, dist_rank, nearest_set

STRATEGIES = ("chain", "forest", "best")


@dataclass
class GoodPartition:
    parts: list              # list of frozensets of clients
    reps: list               # representatives in pick order
    child: dict              # rep -> frozenset of adopted clients
    heads: dict              # part index -> head client j_P (max ell, in reps)
    rho: float               # claimed radius parameter
    r: float
    cov: dict
    forest_edges: dict = field(default_factory=dict)   # rep -> parent rep
    heights: dict = field(default_factory=dict)        # rep -> forest height

    def ell_part(self, inst: Instance, p: int) -> int:
        return max(int(inst.ell[v]) for v in self.parts[p])


@dataclass
class BudgetAllocation:
    per_part: list           # k_P for each part, aligned with gp.parts
    opt_value: int           # number of clients served via satisfied reps
    choices: list            # DP argmax trace, one entry per part


def _support(inst: Instance, cov: dict):
    return [v for v in inst.clients if cov.get(v, 0.0) > EPS_LP]


def _head_of_part(inst: Instance, part, reps) -> int:
    """Max-ell member; ties broken by min id among representatives."""
    top = max(int(inst.ell[v]) for v in part)
    candidates = [v for v in part if int(inst.ell[v]) == top and v in reps]
    if not candidates:  # adoption requires ell_v <= ell_j, so a rep attains top
        candidates = [v for v in part if int(inst.ell[v]) == top]
    return min(candidates)


def _parts_from_components(inst, reps, child, adjacency, rho, r, cov,
                           **extra) -> GoodPartition:
    """Union the child sets over connected components of the rep graph."""
    seen, components = set(), []
    for root in reps:
        if root in seen:
            continue
        stack, comp = [root], set()
        while stack:
            j = stack.pop()
            if j in comp:
                continue
            comp.add(j)
            stack.extend(adjacency.get(j, ()))
        seen |= comp
        components.append(sorted(comp))
    parts = [frozenset(v for j in comp for v in child[j])
             for comp in components]
    gp = GoodPartition(parts=parts, reps=list(reps), child=dict(child),
                       heads={}, rho=rho, r=r, cov=dict(cov), **extra)
    rep_set = set(reps)
    gp.heads = {p: _head_of_part(inst, part, rep_set)
                for p, part in enumerate(parts)}
    return gp


def build_partition_chain(inst: Instance, cov: dict, r: float) -> GoodPartition:
    """Greedy reps by max cov; each rep adopts clients within 2tr that have
    no larger fault tolerance. Reps within 2r of each other are chained into
    one part. Radius parameter: 4t - 2."""
    t = inst.t
    unassigned = set(_support(inst, cov))
    reps, child = [], {}
    while unassigned:
        j = min(unassigned, key=lambda v: (-cov[v], v))
        reps.append(j)
        kids = frozenset(v for v in unassigned
                         if inst.dist[v, j] <= 2 * t * r
                         and inst.ell[v] <= inst.ell[j])
        child[j] = kids
        unassigned -= kids
    adjacency = {j: [j2 for j2 in reps if j2 != j and inst.dist[j, j2] <= 2 * r]
                 for j in reps}
    return _parts_from_components(inst, reps, child, adjacency,
                                  rho=4 * t - 2, r=r, cov=cov)


def build_partition_forest(inst: Instance, cov: dict, r: float) -> GoodPartition:
    """Greedy reps by max cov, grown as a forest: a new rep captures every
    current root within its height-indexed radius, and adopts clients within
    2^height * r. Radius parameter: 2^t."""
    t = inst.t
    unassigned = set(_support(inst, cov))
    reps, child = [], {}
    parent, height, roots = {}, {}, []
    while unassigned:
        j = min(unassigned, key=lambda v: (-cov[v], v))
        reps.append(j)
        captured = [j2 for j2 in roots
                    if inst.dist[j, j2] <= (2 ** height[j2]) * r]
        for j2 in captured:
            parent[j2] = j
        roots = [j2 for j2 in roots if j2 not in captured] + [j]
        height[j] = 1 + max((height[j2] for j2 in captured), default=0)
        kids = frozenset(v for v in unassigned
                         if inst.dist[v, j] <= (2 ** height[j]) * r
                         and inst.ell[v] <= inst.ell[j])
        child[j] = kids
        unassigned -= kids
    adjacency = {j: [] for j in reps}
    for j2, j in parent.items():
        adjacency[j].append(j2)
        adjacency[j2].append(j)
    return _parts_from_components(inst, reps, child, adjacency,
                                  rho=float(2 ** t), r=r, cov=cov,
                                  forest_edges=dict(parent),
                                  heights=dict(height))


def verify_good_partition(inst: Instance, gp: GoodPartition, rho: float):
    """Machine-check the three defining properties at radius parameter rho.
    Returns (ok, report); the report names the first violation's witnesses.

    Property 1: the child sets partition the covered clients, refine the
    parts, and parents dominate children in both cov and ell. Property 2:
    reps in different parts are more than 2r apart. Property 3: every client
    of a part is within rho * r of the part's max-ell head, which is a rep.
    """
    covered = set(_support(inst, gp.cov))
    all_children = [v for j in gp.reps for v in gp.child[j]]
    if len(all_children) != len(set(all_children)) or \
            set(all_children) != covered:
        return False, "property 1: child sets do not partition the clients"
    part_of = {}
    for p, part in enumerate(gp.parts):
        for v in part:
            part_of[v] = p
    if set(part_of) != covered:
        return False, "property 1: parts do not cover the clients"
    for j in gp.reps:
        for v in gp.child[j]:
            if part_of[v] != part_of[j]:
                return False, f"property 1: child set of {j} split by v={v}"
            if gp.cov[j] < gp.cov[v] - EPS_LP or inst.ell[j] < inst.ell[v]:
                return False, f"property 1: rep {j} does not dominate {v}"
    for a, j in enumerate(gp.reps):
        for j2 in gp.reps[a + 1:]:
            if part_of[j] != part_of[j2] and inst.dist[j, j2] <= 2 * gp.r:
                return False, f"property 2: reps {j},{j2} within 2r across parts"
    for p, part in enumerate(gp.parts):
        head = gp.heads[p]
        if head not in gp.reps:
            return False, f"property 3: head {head} of part {p} not a rep"
        top = max(int(inst.ell[v]) for v in part)
        if int(inst.ell[head]) != top:
            return False, f"property 3: head {head} not max-ell in part {p}"
        for v in part:
            if inst.dist[head, v] > rho * gp.r + EPS_LP:
                return False, (f"property 3: d({head},{v})="
                               f"{inst.dist[head, v]:g} > {rho:g}*r")
    return True, "ok"


def budget_dp(inst: Instance, gp: GoodPartition, k: int) -> BudgetAllocation:
    """Distribute the facility budget across parts, at most ell_P per part,
    maximizing the number of clients adopted by reps whose fault tolerance
    is met. Table DP over (part prefix, budget) with stored argmax choices."""
    parts_n = len(gp.parts)
    gains = []  # gains[p][b] = clients served in part p with budget b
    for p in range(parts_n):
        lp = gp.ell_part(inst, p)
        reps_in = [j for j in gp.reps if j in gp.parts[p]]
        row = [sum(len(gp.child[j]) for j in reps_in if inst.ell[j] <= b)
               for b in range(lp + 1)]
        gains.append(row)
    neg = -1
    table = [[0] * (k + 1) for _ in range(parts_n + 1)]
    choice = [[0] * (k + 1) for _ in range(parts_n + 1)]
    for p in range(1, parts_n + 1):
        lp = len(gains[p - 1]) - 1
        for b in range(k + 1):
            best, best_l = neg, 0
            for l in range(min(b, lp) + 1):
                val = table[p - 1][b - l] + gains[p - 1][l]
                if val > best:
                    best, best_l = val, l
            table[p][b] = best
            choice[p][b] = best_l
    per_part, b = [0] * parts_n, k
    for p in range(parts_n, 0, -1):
        l = choice[p][b]
        per_part[p - 1] = l
        b -= l
    return BudgetAllocation(per_part=per_part, opt_value=table[parts_n][k],
                            choices=[row[:] for row in choice[1:]])


def round_from_allocation(inst: Instance, gp: GoodPartition,
                          alloc: BudgetAllocation) -> Solution:
    """Open the k_P nearest facilities around each part head; the served set
    is every child of a rep whose fault tolerance fits its part's budget."""
    if alloc.opt_value < inst.m:
        raise PreconditionViolated(
            f"allocation serves {alloc.opt_value} < m={inst.m}")
    opened, served = set(), set()
    for p, part in enumerate(gp.parts):
        kp = alloc.per_part[p]
        if kp == 0:
            continue
        opened |= nearest_set(inst, gp.heads[p], inst.facilities, kp)
        for j in gp.reps:
            if j in part and inst.ell[j] <= kp:
                served |= gp.child[j]
    achieved = max(dist_rank(inst, v, opened, int(inst.ell[v]))
                   for v in served)
    r = gp.r
    return Solution(open=frozenset(opened), served=frozenset(served),
                    radius_guess=r, achieved=achieved,
                    dilation=achieved / r if r > 0 else 1.0)


def make_cut(gp: GoodPartition, m: int, opt_value: int | None = None) -> Cut:
    """Inequality sum |child(v)| * cov_v <= m - 1 over the representatives.
    Valid for the integer hull whenever the budgeting optimum is below m,
    and always violated by the cov that built the partition."""
    if opt_value is not None and opt_value >= m:
        raise PreconditionViolated("cut requested although rounding succeeds")
    lam = {j: len(gp.child[j]) for j in gp.reps}
    return Cut.make(lam, rhs=m - 1, tag="LambdaCut")


@dataclass
class RoundOrCutResult:
    status: str              # "rounded" | "radius_too_small"
    solution: Solution | None
    partitions: list         # every GoodPartition built during the loop
    cuts: list               # (Cut, generating cov, radius) triples
    iterations: int
    trace: list              # tab-separated iteration log lines


def _builders_for(strategy: str):
    if strategy == "chain":
        return [build_partition_chain]
    if strategy == "forest":
        return [build_partition_forest]
    if strategy == "best":
        return [build_partition_chain, build_partition_forest]
    raise PreconditionViolated(f"unknown strategy {strategy!r}")


def solve_fkso_at_radius(inst: Instance, r: float,
                         strategy: str = "best") -> RoundOrCutResult:
    """Round-or-cut at a fixed radius guess.

    Each iteration solves the cov polytope with the current cut pool, builds
    the partition(s) for the strategy, and runs the budgeting DP. A part
    layout reaching m rounds immediately (preferring the smaller radius
    parameter); otherwise every failing partition contributes a cut and the
    LP is re-solved. Infeasibility of the polytope certifies the radius is
    too small. Each emitted coefficient vector can be violated at most once,
    so the loop is finite; the cap only surfaces cycling bugs.
    """
    builders = _builders_for(strategy)
    cuts, collected, partitions, trace = [], [], [], []
    cap = max(8, inst.n ** 3)
    for iteration in range(cap):
        point = solve_lp(build_cov_polytope(inst, r), cuts)
        if point is None:
            trace.append(f"{r:g}\tinfeasible\t{strategy}\t-\t-\tstop")
            return RoundOrCutResult("radius_too_small", None, partitions,
                                    collected, iteration, trace)
        cov = coverage_of(point)
        outcomes = []
        for build in builders:
            gp = build(inst, cov, r)
            partitions.append(gp)
            alloc = budget_dp(inst, gp, inst.k)
            outcomes.append((gp, alloc))
        # The builder with the smaller radius parameter decides round vs cut;
        # rounding with the other one could exceed the min(4t-1, 2^t+1)
        # guarantee. Extra failing builders still contribute (valid) cuts.
        outcomes.sort(key=lambda o: o[0].rho)
        gp, alloc = outcomes[0]
        if alloc.opt_value >= inst.m:
            sol = round_from_allocation(inst, gp, alloc)
            trace.append(f"{r:g}\tfeasible\t{strategy}\t{gp.rho:g}"
                         f"\t{alloc.opt_value}\tround")
            return RoundOrCutResult("rounded", sol, partitions, collected,
                                    iteration + 1, trace)
        for gp, alloc in outcomes:
            if alloc.opt_value >= inst.m:
                continue
            cut = make_cut(gp, inst.m, alloc.opt_value)
            trace.append(f"{r:g}\tfeasible\t{strategy}\t{gp.rho:g}"
                         f"\t{alloc.opt_value}\tcut")
            if not cut.violated_by(cov):
                raise IterationCapExceeded(
                    "emitted cut does not cut off the current point")
            if cut not in cuts:
                cuts.append(cut)
                collected.append((cut, cov, r))
    raise IterationCapExceeded(f"exceeded {cap} iterations at r={r:g}")


def solve_fkso(inst: Instance, strategy: str = "best",
               report: dict | None = None) -> Solution:
    """Ascending scan of candidate radii; returns the first rounded solution.
    With strategy "best" the guarantee is min(4t-1, 2^t+1) times the optimum.

    `report`, when given, accumulates partitions, cuts, and trace lines from
    every radius probed.
    """
    for r in candidate_radii(inst):
        result = solve_fkso_at_radius(inst, r, strategy)
        if report is not None:
            report.setdefault("partitions", []).extend(result.partitions)
            report.setdefault("cuts", []).extend(result.cuts)
            report.setdefault("trace", []).extend(result.trace)
            report["iterations"] = (report.get("iterations", 0)
                                    + result.iterations)
        if result.status == "rounded":
            return result.solution
    raise Infeasible("every candidate radius certified too small")
