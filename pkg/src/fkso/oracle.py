"""Exact brute-force solvers used as ground truth in tests.

Everything here enumerates exhaustively, guarded by a subset budget; these
are oracles for desk-scale instances, not production solvers.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import BudgetExceeded
from .instances import Instance

DEFAULT_SUBSET_BUDGET = 10 ** 6


@dataclass
class OracleResult:
    opt_radius: float
    open: frozenset
    served: frozenset
    coverage_curve: list     # (radius, max clients coverable) per candidate


def coverage_at(inst: Instance, S, r: float) -> frozenset:
    """Clients served by S at radius r: those with ell_v facilities of S
    within distance r."""
    S = list(S)
    served = []
    for v in inst.clients:
        lv = int(inst.ell[v])
        if lv <= len(S) and sum(1 for i in S if inst.dist[v, i] <= r) >= lv:
            served.append(v)
    return frozenset(served)


def _client_costs(inst: Instance, S) -> np.ndarray:
    """cost_v = distance to the ell_v-th nearest facility of S (inf if |S| < ell_v)."""
    S = sorted(S)
    costs = np.full(inst.n, np.inf)
    d = np.sort(inst.dist[np.ix_(range(inst.n), S)], axis=1)
    for v in inst.clients:
        lv = int(inst.ell[v])
        if lv <= len(S):
            costs[v] = d[v, lv - 1]
    return costs


def exact_opt(inst: Instance,
              max_subsets: int = DEFAULT_SUBSET_BUDGET) -> OracleResult:
    """Enumerate every facility subset of size min(k, |F|); supersets never
    reduce coverage, so smaller sizes need not be tried. Records, for each
    candidate radius, the best achievable coverage over all subsets."""
    size = min(inst.k, inst.f)
    count = math.comb(inst.f, size)
    if count > max_subsets:
        raise BudgetExceeded(
            f"{count} subsets exceed the budget of {max_subsets}",
            required=count)
    radii = sorted(set(float(x)
                       for x in inst.dist[:inst.n, inst.n:].reshape(-1)))
    radii_arr = np.array(radii)
    best_cover = np.zeros(len(radii), dtype=int)
    opt_radius, witness = None, None
    for S in itertools.combinations(inst.facilities, size):
        costs = _client_costs(inst, S)
        # coverage of S at radius radii[i] = #clients with cost <= radii[i]
        finite = np.sort(costs[np.isfinite(costs)])
        cover = np.searchsorted(finite, radii_arr, side="right")
        best_cover = np.maximum(best_cover, cover)
        if len(finite) >= inst.m:
            rad = float(finite[inst.m - 1])
            if opt_radius is None or rad < opt_radius:
                opt_radius, witness = rad, frozenset(S)
    curve = [(radii[i], int(best_cover[i])) for i in range(len(radii))]
    if opt_radius is None:
        return OracleResult(opt_radius=math.inf, open=frozenset(),
                            served=frozenset(), coverage_curve=curve)
    served = coverage_at(inst, witness, opt_radius)
    return OracleResult(opt_radius=opt_radius, open=witness, served=served,
                        coverage_curve=curve)


def budget_brute(inst: Instance, gp, k: int,
                 max_tuples: int = DEFAULT_SUBSET_BUDGET) -> int:
    """Exhaustive maximum over all per-part budget assignments k_P <= ell_P
    with total at most k, of the number of clients adopted by satisfied reps."""
    limits = [gp.ell_part(inst, p) for p in range(len(gp.parts))]
    total = math.prod(l + 1 for l in limits)
    if total > max_tuples:
        raise BudgetExceeded(
            f"{total} tuples exceed the budget of {max_tuples}",
            required=total)
    reps_by_part = [[j for j in gp.reps if j in part] for part in gp.parts]
    best = 0
    for assign in itertools.product(*(range(l + 1) for l in limits)):
        if sum(assign) > k:
            continue
        value = sum(len(gp.child[j])
                    for p, kp in enumerate(assign)
                    for j in reps_by_part[p] if inst.ell[j] <= kp)
        best = max(best, value)
    return best
