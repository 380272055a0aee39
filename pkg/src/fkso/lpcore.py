"""LP model construction and solving.

Two models are built here: the weak LP over (cov, x) used by the uniform
solver, and the cov-space polytope used by the general round-or-cut loop.
Coverage vectors are plain dicts client -> value in [0, 1]. Cuts are linear
inequalities over cov only and live in a per-loop pool.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linprog

from .errors import NumericalFailure
from .instances import Instance
from .metricops import ball, dist_rank

# Feasibility tolerance: values within EPS_LP of 0 count as 0 for support tests.
EPS_LP = 1e-7


@dataclass(frozen=True)
class Cut:
    """Valid inequality sum_v lambda_v * cov_v <= rhs over the cov variables."""
    lam: tuple               # sorted tuple of (client, integer coefficient)
    rhs: float
    tag: str                 # "WLCut" | "LambdaCut"

    @classmethod
    def make(cls, lam: dict, rhs: float, tag: str) -> "Cut":
        return cls(lam=tuple(sorted((v, int(c)) for v, c in lam.items() if c)),
                   rhs=float(rhs), tag=tag)

    def value_at(self, cov: dict) -> float:
        return sum(c * cov.get(v, 0.0) for v, c in self.lam)

    def violated_by(self, cov: dict, eps: float = EPS_LP) -> bool:
        return self.value_at(cov) > self.rhs + eps


@dataclass
class LpModel:
    variables: list                    # hashable names, bounds all [0, 1]
    constraints: list = field(default_factory=list)  # (name, coeffs, sense, rhs)
    objective: dict = field(default_factory=dict)    # maximized; {} = feasibility
    fixed_zero: set = field(default_factory=set)     # variables pinned to 0

    def add(self, name: str, coeffs: dict, sense: str, rhs: float):
        assert sense in ("<=", ">="), sense
        assert all(var in self._index for var in coeffs), name
        self.constraints.append((name, dict(coeffs), sense, float(rhs)))

    @property
    def _index(self):
        return {var: i for i, var in enumerate(self.variables)}

    def dump(self) -> str:
        """Human-readable LP rows for debugging."""
        lines = []
        for name, coeffs, sense, rhs in self.constraints:
            terms = " + ".join(f"{c:g}*{var}" for var, c in sorted(
                coeffs.items(), key=lambda kv: str(kv[0])))
            lines.append(f"c_{name}: {terms} {sense} {rhs:g}")
        for var in sorted(self.fixed_zero, key=str):
            lines.append(f"c_fix: {var} == 0")
        return "\n".join(lines)


def build_weak_lp(inst: Instance, r: float) -> LpModel:
    """Natural relaxation over cov_v and x_i at radius guess r.

    At least m covered, at most k open, each client's r-ball must hold
    ell_v * cov_v fractional opening, and clients with no ell_v facilities
    within r are pinned to cov 0. For uniform instances this is the exact
    natural LP; for general instances the ball constraint uses each client's
    own ell_v.
    """
    cov_vars = [("cov", v) for v in inst.clients]
    x_vars = [("x", i) for i in inst.facilities]
    model = LpModel(variables=cov_vars + x_vars,
                    objective={var: 1.0 for var in cov_vars})
    model.add("min_served", {var: 1.0 for var in cov_vars}, ">=", inst.m)
    model.add("budget", {var: 1.0 for var in x_vars}, "<=", inst.k)
    for v in inst.clients:
        lv = int(inst.ell[v])
        near = ball(inst, v, r, inst.facilities)
        coeffs = {("x", i): 1.0 for i in near}
        coeffs[("cov", v)] = -float(lv)
        model.add(f"ball_{v}", coeffs, ">=", 0.0)
        if len(near) < lv or dist_rank(inst, v, inst.facilities, lv) > r:
            model.fixed_zero.add(("cov", v))
    return model


def build_cov_polytope(inst: Instance, r: float, cuts=()) -> LpModel:
    """Projection to cov space only: coverage total at least m, box bounds,
    unreachable clients pinned to 0, plus every cut in the pool."""
    cov_vars = [("cov", v) for v in inst.clients]
    model = LpModel(variables=cov_vars,
                    objective={var: 1.0 for var in cov_vars})
    model.add("min_served", {var: 1.0 for var in cov_vars}, ">=", inst.m)
    for v in inst.clients:
        lv = int(inst.ell[v])
        if inst.f < lv or dist_rank(inst, v, inst.facilities, lv) > r:
            model.fixed_zero.add(("cov", v))
    for idx, cut in enumerate(cuts):
        model.add(f"cut_{idx}_{cut.tag}",
                  {("cov", v): float(c) for v, c in cut.lam}, "<=", cut.rhs)
    return model


def solve_lp(model: LpModel, cuts=()) -> dict | None:
    """Solve the model plus extra cuts; returns the point as a dict
    variable -> value, or None when certified infeasible.

    The returned point is independently rechecked against every constraint
    at EPS_LP before being handed out.
    """
    index = model._index
    nvars = len(model.variables)
    rows_ub, rhs_ub = [], []

    def add_row(coeffs, sense, rhs):
        row = np.zeros(nvars)
        for var, c in coeffs.items():
            row[index[var]] = c
        if sense == ">=":
            row, rhs = -row, -rhs
        rows_ub.append(row)
        rhs_ub.append(rhs)

    for _, coeffs, sense, rhs in model.constraints:
        add_row(coeffs, sense, rhs)
    for cut in cuts:
        add_row({("cov", v): float(c) for v, c in cut.lam}, "<=", cut.rhs)

    bounds = [(0.0, 0.0) if var in model.fixed_zero else (0.0, 1.0)
              for var in model.variables]
    c = np.zeros(nvars)
    for var, coef in model.objective.items():
        c[index[var]] = -coef  # linprog minimizes
    res = linprog(c, A_ub=np.array(rows_ub), b_ub=np.array(rhs_ub),
                  bounds=bounds, method="highs")
    if res.status == 2:
        return None
    if res.status != 0:
        raise NumericalFailure(f"LP backend status {res.status}: {res.message}")
    point = {var: float(res.x[index[var]]) for var in model.variables}
    _recheck(model, cuts, point)
    return point


def _recheck(model: LpModel, cuts, point: dict) -> None:
    for name, coeffs, sense, rhs in model.constraints:
        lhs = sum(c * point[var] for var, c in coeffs.items())
        slack = rhs - lhs if sense == "<=" else lhs - rhs
        if slack < -EPS_LP:
            raise NumericalFailure(f"constraint {name} violated by {-slack:g}")
    for cut in cuts:
        lhs = sum(c * point[("cov", v)] for v, c in cut.lam)
        if lhs > cut.rhs + EPS_LP:
            raise NumericalFailure(f"{cut.tag} cut violated by {lhs - cut.rhs:g}")
    for var, value in point.items():
        hi = 0.0 if var in model.fixed_zero else 1.0
        if not (-EPS_LP <= value <= hi + EPS_LP):
            raise NumericalFailure(f"bound violated for {var}: {value:g}")


def point_feasible(model: LpModel, point: dict, cuts=()) -> bool:
    """Check an externally supplied point against the model at EPS_LP."""
    try:
        _recheck(model, cuts, point)
    except NumericalFailure:
        return False
    return True


def coverage_of(point: dict) -> dict:
    """Extract the client -> cov map from an LP point, clamping to [0, 1]."""
    return {var[1]: min(1.0, max(0.0, val))
            for var, val in point.items() if var[0] == "cov"}
