"""Approximation algorithms for fault-tolerant k-supplier with outliers.

Clients each demand a number of nearby open facilities (their fault
tolerance); only m of the n clients must be served. The package provides:

- an outlier-free 3-approximation (`solve_fks`),
- a uniform-tolerance 3-approximation via LP round-or-cut (`solve_ufkso`),
- a general solver with factor min(4t-1, 2^t+1) over the t distinct
  tolerance values (`solve_fkso`),
- an exhaustive exact oracle (`oracle.exact_opt`),
- instance generators, including two adversarial constructions, and
- a CLI: ``python -m fkso.cli``.
"""

from .errors import (ArgumentError, BudgetExceeded, FksoError, Infeasible,
                     IterationCapExceeded, NumericalFailure, ParseError,
                     PreconditionViolated, RankOutOfRange, ValidationError)
from .fks import FksRun, solve_fks, solve_fks_at_radius
from .general import (BudgetAllocation, GoodPartition, budget_dp,
                      build_partition_chain, build_partition_forest,
                      make_cut, round_from_allocation, solve_fkso,
                      solve_fkso_at_radius, verify_good_partition)
from .instances import (Instance, Solution, gen_gap_instance,
                        gen_limit_instance, gen_random_instance,
                        limit_instance_cov, load_instance, save_instance,
                        validate_instance)
from .lpcore import (EPS_LP, Cut, LpModel, build_cov_polytope, build_weak_lp,
                     coverage_of, point_feasible, solve_lp)
from .metricops import (ball, candidate_radii, dist_rank, is_well_separated,
                        nearest_set)
from .oracle import OracleResult, budget_brute, coverage_at, exact_opt
from .ufkso import (RepAssignment, check_wlcut, filter_reps,
                    open_facilities_uniform, solve_ufkso)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
