"""Command-line surface: gen, solve, exact, verify, bench.

Every command prints a single JSON report with stable key order to stdout.
Exit codes: 0 success, 2 infeasible, 3 validation/parse error.
Diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time

from . import general, oracle
from .errors import FksoError, Infeasible, ParseError, ValidationError
from .fks import solve_fks
from .instances import (Instance, Solution, gen_gap_instance,
                        gen_limit_instance, gen_random_instance,
                        load_instance, save_instance)
from .metricops import dist_rank
from .ufkso import solve_ufkso

EXIT_OK, EXIT_INFEASIBLE, EXIT_INVALID = 0, 2, 3


def _digest(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()[:16]


def _emit(report: dict) -> None:
    print(json.dumps(report, indent=2))


def _read_instance(path: str) -> Instance:
    with open(path, "rb") as fh:
        return load_instance(fh.read())


def _solution_report(inst: Instance, sol: Solution) -> dict:
    return {
        "radius_guess": sol.radius_guess,
        "achieved": sol.achieved,
        "open": sorted(sol.open),
        "served": sorted(sol.served),
        "open_count": len(sol.open),
        "served_count": len(sol.served),
    }


def cmd_solve(args) -> int:
    inst = _read_instance(args.instance)
    started = time.perf_counter()
    report = {"command": "solve", "algorithm": args.algorithm,
              "instance_digest": _digest(save_instance(inst))}
    trace_sink: dict = {}
    try:
        if args.algorithm == "fks":
            sol = solve_fks(inst)
        elif args.algorithm == "ufkso":
            sol = solve_ufkso(inst)
        else:
            if args.radius is not None:
                result = general.solve_fkso_at_radius(
                    inst, args.radius, args.strategy)
                trace_sink["trace"] = result.trace
                if result.status != "rounded":
                    report["result"] = "radius_too_small"
                    report["cuts_emitted"] = len(result.cuts)
                    report["wall_time_s"] = time.perf_counter() - started
                    _emit(report)
                    return EXIT_INFEASIBLE
                sol = result.solution
                trace_sink["cuts"] = result.cuts
            else:
                sol = general.solve_fkso(inst, args.strategy, trace_sink)
    except Infeasible as e:
        report["result"] = "infeasible"
        report["error"] = str(e)
        _emit(report)
        return EXIT_INFEASIBLE
    report["result"] = "solved"
    report["solution"] = _solution_report(inst, sol)
    report["cuts_emitted"] = len(trace_sink.get("cuts", []))
    if args.oracle:
        orc = oracle.exact_opt(inst, max_subsets=args.max_subsets)
        report["oracle_opt"] = orc.opt_radius
        report["dilation_vs_oracle"] = (
            sol.achieved / orc.opt_radius if orc.opt_radius > 0 else 1.0)
    report["wall_time_s"] = time.perf_counter() - started
    if args.trace:
        for line in trace_sink.get("trace", []):
            print(line, file=sys.stderr)
    _emit(report)
    return EXIT_OK


def cmd_exact(args) -> int:
    inst = _read_instance(args.instance)
    started = time.perf_counter()
    orc = oracle.exact_opt(inst, max_subsets=args.max_subsets)
    report = {
        "command": "exact",
        "instance_digest": _digest(save_instance(inst)),
        "opt_radius": orc.opt_radius,
        "open": sorted(orc.open),
        "served": sorted(orc.served),
        "coverage_curve": [[r, c] for r, c in orc.coverage_curve],
        "wall_time_s": time.perf_counter() - started,
    }
    _emit(report)
    return EXIT_OK


def cmd_gen(args) -> int:
    if args.kind == "gap":
        inst = gen_gap_instance(args.k, args.M)
    elif args.kind == "limit":
        inst = gen_limit_instance(args.t, args.k, args.scale)
    else:
        inst = gen_random_instance(args.seed, args.n, args.f, args.k,
                                   args.m, args.t)
    data = save_instance(inst)
    with open(args.out, "wb") as fh:
        fh.write(data)
    _emit({"command": "gen", "kind": args.kind, "out": args.out,
           "instance_digest": _digest(data), "n": inst.n, "f": inst.f,
           "k": inst.k, "m": inst.m})
    return EXIT_OK


def cmd_verify(args) -> int:
    inst = _read_instance(args.instance)
    with open(args.solution) as fh:
        doc = json.load(fh)
    sol = doc.get("solution", doc)
    opened = sol["open"]
    served = sol["served"]
    claimed = float(sol["achieved"])
    report = {"command": "verify",
              "instance_digest": _digest(save_instance(inst))}
    failures = []
    if len(set(opened)) > inst.k:
        failures.append(f"opens {len(set(opened))} > k={inst.k}")
    if len(set(served)) < inst.m:
        failures.append(f"serves {len(set(served))} < m={inst.m}")
    bad = [i for i in opened if i not in set(inst.facilities)]
    if bad:
        failures.append(f"not facilities: {bad}")
    if not failures:
        achieved = max(dist_rank(inst, v, opened, int(inst.ell[v]))
                       for v in served)
        report["recomputed_achieved"] = achieved
        if achieved > claimed + 1e-9:
            worst = max(served, key=lambda v: dist_rank(
                inst, v, opened, int(inst.ell[v])))
            failures.append(
                f"achieved {achieved:g} exceeds claimed {claimed:g}"
                f" (witness client {worst})")
    report["consistent"] = not failures
    report["failures"] = failures
    _emit(report)
    return EXIT_OK if not failures else EXIT_INFEASIBLE


def _bench_one(params) -> dict:
    seed, n, f, k, m, t, strategy, max_subsets = params
    inst = gen_random_instance(seed=seed, n=n, f_count=f, k=k, m=m, t=t)
    orc = oracle.exact_opt(inst, max_subsets=max_subsets)
    sol = general.solve_fkso(inst, strategy)
    return {
        "seed": seed,
        "oracle_opt": orc.opt_radius,
        "achieved": sol.achieved,
        "dilation": (sol.achieved / orc.opt_radius
                     if orc.opt_radius > 0 else 1.0),
    }


def cmd_bench(args) -> int:
    """Random-suite dilation study: solve with the general algorithm and
    compare against the exact oracle. Records, never asserts."""
    started = time.perf_counter()
    work = [(args.seed + i, args.n, args.f, args.k, args.m, args.t,
             args.strategy, args.max_subsets) for i in range(args.count)]
    if args.jobs > 1:
        import concurrent.futures
        with concurrent.futures.ProcessPoolExecutor(args.jobs) as pool:
            rows = list(pool.map(_bench_one, work))
    else:
        rows = [_bench_one(w) for w in work]
    _emit({"command": "bench", "strategy": args.strategy, "runs": rows,
           "max_dilation": max(r["dilation"] for r in rows),
           "wall_time_s": time.perf_counter() - started})
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fkso",
        description="Fault-tolerant k-supplier with outliers: approximation "
                    "solvers, exact oracle, and instance generators.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="run an approximation solver")
    p.add_argument("instance")
    p.add_argument("--algorithm", choices=["fks", "ufkso", "fkso"],
                   default="fkso")
    p.add_argument("--strategy", choices=list(general.STRATEGIES),
                   default="best")
    p.add_argument("--radius", type=float, default=None,
                   help="force a single radius guess, skip the search")
    p.add_argument("--oracle", action="store_true",
                   help="attach an exact-optimum comparison")
    p.add_argument("--trace", action="store_true",
                   help="emit the iteration log to stderr")
    p.add_argument("--max-subsets", type=int,
                   default=oracle.DEFAULT_SUBSET_BUDGET)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("exact", help="exhaustive exact optimum")
    p.add_argument("instance")
    p.add_argument("--max-subsets", type=int,
                   default=oracle.DEFAULT_SUBSET_BUDGET)
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("gen", help="generate an instance file")
    p.add_argument("kind", choices=["gap", "limit", "random"])
    p.add_argument("--out", required=True)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--M", type=float, default=1000.0)
    p.add_argument("--t", type=int, default=2)
    p.add_argument("--scale", type=float, default=1.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n", type=int, default=8)
    p.add_argument("--f", type=int, default=6)
    p.add_argument("--m", type=int, default=5)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", help="independently recheck a solution file")
    p.add_argument("instance")
    p.add_argument("solution")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="random-suite dilation study")
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n", type=int, default=8)
    p.add_argument("--f", type=int, default=6)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--m", type=int, default=5)
    p.add_argument("--t", type=int, default=2)
    p.add_argument("--strategy", choices=list(general.STRATEGIES),
                   default="best")
    p.add_argument("--max-subsets", type=int,
                   default=oracle.DEFAULT_SUBSET_BUDGET)
    p.add_argument("--jobs", type=int, default=1,
                   help="run the suite in N worker processes")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, ValidationError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID
    except FksoError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INFEASIBLE


if __name__ == "__main__":
    sys.exit(main())
