import dataclasses

import numpy as np
import pytest

from fkso.instances import Instance, gen_random_instance, validate_instance


@pytest.fixture
def trivial():
    """Smallest legal instance: one client, one facility at distance 2."""
    return Instance(n=1, f=1, k=1, m=1, ell=np.array([1]),
                    dist=np.array([[0.0, 2.0], [2.0, 0.0]]))


def uniform_instance(seed, n, f, k, ell, m):
    """Random Euclidean instance with every fault tolerance set to ell."""
    base = gen_random_instance(seed=seed, n=n, f_count=f, k=k, m=m, t=1)
    inst = dataclasses.replace(base, ell=np.full(n, ell, dtype=int))
    validate_instance(inst)
    return inst


def random_suite(count, seed0, n_max, f_max, k_max, t_max, m_full=False):
    """Deterministic stream of small random instances for ratio tests."""
    rng = np.random.default_rng(seed0)
    out = []
    while len(out) < count:
        n = int(rng.integers(3, n_max + 1))
        f = int(rng.integers(2, f_max + 1))
        k = int(rng.integers(1, min(k_max, f) + 1))
        t = int(rng.integers(1, min(t_max, k, n) + 1))
        m = n if m_full else int(rng.integers(1, n + 1))
        seed = int(rng.integers(0, 2 ** 31))
        out.append(gen_random_instance(seed=seed, n=n, f_count=f, k=k,
                                       m=m, t=t))
    return out


def two_cluster_instance():
    """Two far-apart clusters, one ell=2 client with two unit-distance
    facilities each; k=3, m=1. The fractional optimum spreads coverage over
    both cluster reps (total 1.5 > floor(3/2) = 1), forcing a WLCut."""
    pts = np.array([
        [0.0, 0.0],     # client A
        [100.0, 0.0],   # client B
        [1.0, 0.0],     # facilities near A
        [0.0, 1.0],
        [101.0, 0.0],   # facilities near B
        [100.0, 1.0],
    ])
    dist = np.sqrt(((pts[:, None, :] - pts[None, :, :]) ** 2).sum(axis=2))
    np.fill_diagonal(dist, 0.0)
    inst = Instance(n=2, f=4, k=3, m=1, ell=np.array([2, 2]), dist=dist)
    validate_instance(inst)
    return inst
