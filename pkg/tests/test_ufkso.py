import dataclasses

import pytest
from conftest import two_cluster_instance, uniform_instance

from fkso.errors import PreconditionViolated
from fkso.instances import gen_random_instance
from fkso.lpcore import EPS_LP
from fkso.metricops import dist_rank, is_well_separated
from fkso.oracle import exact_opt
from fkso.ufkso import (RepAssignment, check_wlcut, filter_reps,
                        open_facilities_uniform, solve_ufkso)


def test_filter_reps_empty_and_invariants():
    inst = uniform_instance(seed=10, n=8, f=5, k=3, ell=1, m=5)
    rep = filter_reps(inst, {v: 0.0 for v in inst.clients}, 5.0)
    assert rep.reps == []

    cov = {v: (v + 1) / 10 for v in inst.clients}
    for r in [1.0, 10.0, 40.0]:
        rep = filter_reps(inst, cov, r)
        assert is_well_separated(inst, rep.reps, r)
        seen = set()
        for j in rep.reps:
            for v in rep.child[j]:
                assert cov[j] >= cov[v]
                assert inst.dist[v, j] <= 2 * r
            assert not (rep.child[j] & seen)
            seen |= rep.child[j]
        assert seen == {v for v in inst.clients if cov[v] > EPS_LP}


def test_filter_reps_single_cluster():
    # one tight cluster: the max-cov client absorbs everything within 2r
    inst = uniform_instance(seed=11, n=5, f=4, k=2, ell=1, m=3)
    big_r = max(float(inst.dist[v, w]) for v in inst.clients
                for w in inst.clients)
    cov = {v: 0.5 for v in inst.clients}
    cov[3] = 1.0
    rep = filter_reps(inst, cov, big_r)
    assert rep.reps == [3]
    assert rep.child[3] == set(inst.clients)


def test_open_facilities_uniform_counts():
    inst = uniform_instance(seed=12, n=6, f=6, k=5, ell=2, m=4)
    cov = {v: 1.0 for v in inst.clients}
    rep = filter_reps(inst, cov, 1.0)
    opened, chosen = open_facilities_uniform(inst, rep, k=5, ell=2)
    assert len(chosen) <= 2          # floor(5/2)
    assert len(opened) <= 4 <= inst.k

    single = RepAssignment(reps=[0], child={0: frozenset({0})},
                           cov={0: 1.0}, r=1.0)
    opened, chosen = open_facilities_uniform(inst, single, k=2, ell=2)
    assert chosen == [0] and len(opened) == 2


def test_check_wlcut():
    inst = uniform_instance(seed=13, n=6, f=6, k=5, ell=2, m=4)
    empty = RepAssignment(reps=[], child={}, cov={}, r=1.0)
    assert check_wlcut(empty, k=5, ell=2) is None

    # floor(k/ell)+1 reps at cov 1 -> forced violation
    rep = RepAssignment(reps=[0, 1, 2], child={j: frozenset({j}) for j in
                                               range(3)},
                        cov={0: 1.0, 1: 1.0, 2: 1.0}, r=1.0)
    cut = check_wlcut(rep, k=5, ell=2)
    assert cut is not None
    assert cut.rhs == 2 and dict(cut.lam) == {0: 1, 1: 1, 2: 1}
    assert cut.violated_by(rep.cov)


def test_no_wlcut_when_ell_divides_k():
    # with ell | k the floor cut equals the fractional bound, so the loop
    # never needs to emit one
    for seed, ell, k in [(20, 1, 3), (21, 2, 4), (22, 3, 3)]:
        inst = uniform_instance(seed=seed, n=8, f=6, k=k, ell=ell, m=5)
        collected = []
        sol = solve_ufkso(inst, collect=collected)
        assert collected == []
        assert len(sol.served) >= inst.m


def test_wlcut_emitted_on_misdividing_instance():
    inst = two_cluster_instance()
    collected = []
    sol = solve_ufkso(inst, collect=collected)
    assert collected, "expected at least one WLCut emission"
    for cut, cov in collected:
        assert cut.tag == "WLCut"
        assert cut.violated_by(cov)
    assert len(sol.served) >= inst.m
    assert sol.achieved <= 3 * exact_opt(inst).opt_radius + 1e-9


def test_requires_uniform():
    inst = gen_random_instance(14, 6, 5, 3, 4, 2)
    with pytest.raises(PreconditionViolated):
        solve_ufkso(inst)


def test_solution_quality_vs_oracle():
    for seed, ell, k, m in [(11, 2, 4, 7), (15, 1, 3, 6), (16, 3, 4, 4)]:
        inst = uniform_instance(seed=seed, n=10, f=7, k=k, ell=ell, m=m)
        sol = solve_ufkso(inst)
        opt = exact_opt(inst).opt_radius
        assert len(sol.open) <= inst.k
        assert len(sol.served) >= inst.m
        achieved = max(dist_rank(inst, v, sol.open, ell) for v in sol.served)
        assert achieved == pytest.approx(sol.achieved)
        assert sol.achieved <= 3 * opt + 1e-9
        assert sol.achieved <= 3 * sol.radius_guess + 1e-9


def test_ell_one_matches_plain_outlier_supplier():
    # ell = 1 degenerates to k-supplier with outliers; still a 3-approx
    for seed in [30, 31, 32]:
        inst = uniform_instance(seed=seed, n=9, f=6, k=3, ell=1, m=6)
        sol = solve_ufkso(inst)
        assert sol.achieved <= 3 * exact_opt(inst).opt_radius + 1e-9
