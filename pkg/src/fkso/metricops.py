"""Metric primitives shared by every solver.

Ties in ranked-distance queries are always broken by ascending facility id,
so repeated runs are reproducible.
"""

from __future__ import annotations

from .errors import RankOutOfRange
from .instances import Instance


def _ranked(inst: Instance, v: int, S) -> list:
    """Facilities of S sorted by (distance to v, id)."""
    return sorted(S, key=lambda i: (inst.dist[v, i], i))


def dist_rank(inst: Instance, v: int, S, a: int) -> float:
    """d_a(v, S): distance from v to its a-th closest facility in S."""
    S = list(S)
    if not (1 <= a <= len(S)):
        raise RankOutOfRange(f"rank {a} not in [1, {len(S)}]")
    return float(inst.dist[v, _ranked(inst, v, S)[a - 1]])


def nearest_set(inst: Instance, v: int, S, a: int) -> frozenset:
    """N_a(v, S): the a facilities of S closest to v (same tie rule)."""
    S = list(S)
    if not (0 <= a <= len(S)):
        raise RankOutOfRange(f"rank {a} not in [0, {len(S)}]")
    return frozenset(_ranked(inst, v, S)[:a])


def ball(inst: Instance, center: int, r: float, pool) -> frozenset:
    """Closed ball: points of the pool within distance r of center."""
    return frozenset(x for x in pool if inst.dist[center, x] <= r)


def is_well_separated(inst: Instance, X, r: float) -> bool:
    """True iff every distinct pair of X is at distance strictly > 2r."""
    X = list(X)
    for idx, x in enumerate(X):
        for y in X[idx + 1:]:
            if inst.dist[x, y] <= 2 * r:
                return False
    return True


def candidate_radii(inst: Instance) -> list:
    """Sorted distinct client-to-facility distances; the optimum radius of
    any instance is always one of these values."""
    block = inst.dist[:inst.n, inst.n:]
    return sorted(set(float(x) for x in block.reshape(-1)))
