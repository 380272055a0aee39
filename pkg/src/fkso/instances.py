"""Instance data model, validation, JSON file I/O, and instance generators.

Points are dense integer ids: clients are 0..n-1, facilities are n..n+f-1.
The distance table is a full symmetric (n+f) x (n+f) array.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import ArgumentError, ParseError, ValidationError

# Relative tolerance for triangle-inequality checks on floating inputs.
EPS_TRI = 1e-9


@dataclass(frozen=True)
class Instance:
    n: int                  # number of clients
    f: int                  # number of facilities
    k: int                  # facility budget
    m: int                  # inlier target
    ell: np.ndarray         # per-client fault tolerance, shape (n,)
    dist: np.ndarray        # full distance table, shape (n+f, n+f)

    @property
    def clients(self):
        return range(self.n)

    @property
    def facilities(self):
        return range(self.n, self.n + self.f)

    @property
    def t(self) -> int:
        """Number of distinct fault-tolerance values."""
        return len(set(int(x) for x in self.ell))

    def d(self, x: int, y: int) -> float:
        return float(self.dist[x, y])

    def __eq__(self, other):
        if not isinstance(other, Instance):
            return NotImplemented
        return (
            self.n == other.n
            and self.f == other.f
            and self.k == other.k
            and self.m == other.m
            and np.array_equal(self.ell, other.ell)
            and np.array_equal(self.dist, other.dist)
        )


@dataclass
class Solution:
    open: frozenset          # facility ids, |open| <= k
    served: frozenset        # client ids
    radius_guess: float      # the r under which rounding ran
    achieved: float          # max_{v in served} d_{ell_v}(v, open)
    dilation: float = field(default=float("nan"))

    def as_dict(self):
        return {
            "open": sorted(self.open),
            "served": sorted(self.served),
            "radius_guess": self.radius_guess,
            "achieved": self.achieved,
            "dilation": self.dilation,
        }


def validate_instance(inst: Instance) -> None:
    """Check all structural invariants; raise ValidationError with a witness."""
    n, f = inst.n, inst.f
    total = n + f
    if inst.dist.shape != (total, total):
        raise ValidationError(
            f"distance table shape {inst.dist.shape} != ({total},{total})")
    if inst.k < 1:
        raise ValidationError(f"k must be positive, got {inst.k}")
    if inst.k > f:
        raise ValidationError(f"k={inst.k} exceeds facility count {f}")
    if not (1 <= inst.m <= n):
        raise ValidationError(f"m={inst.m} outside [1, n={n}]")
    if inst.ell.shape != (n,):
        raise ValidationError("ell length != n")
    for v in range(n):
        lv = int(inst.ell[v])
        if not (1 <= lv <= inst.k):
            raise ValidationError(
                f"ell[{v}]={lv} outside [1, k={inst.k}]", witness=v)
    d = inst.dist
    if np.any(d < 0):
        x, y = map(int, np.argwhere(d < 0)[0])
        raise ValidationError(f"negative distance d({x},{y})", witness=(x, y))
    if np.any(np.diagonal(d) != 0):
        x = int(np.argwhere(np.diagonal(d) != 0)[0][0])
        raise ValidationError(f"nonzero self-distance at {x}", witness=x)
    if not np.array_equal(d, d.T):
        x, y = map(int, np.argwhere(d != d.T)[0])
        raise ValidationError(f"asymmetric d({x},{y})", witness=(x, y))
    # Triangle inequality: d(x,z) <= d(x,y) + d(y,z) up to relative tolerance.
    scale = max(1.0, float(d.max()))
    for y in range(total):
        bad = d > d[:, y:y + 1] + d[y:y + 1, :] + EPS_TRI * scale
        if np.any(bad):
            x, z = map(int, np.argwhere(bad)[0])
            raise ValidationError(
                f"triangle violation: d({x},{z}) > d({x},{y}) + d({y},{z})",
                witness=(x, y, z))


_SCHEMA_KEYS = ("n", "f", "k", "m", "ell", "dist")


def _num(x: float):
    xi = int(x)
    return xi if x == xi else float(x)


def save_instance(inst: Instance) -> bytes:
    """Canonical JSON serialization; integers stay integers."""
    doc = {
        "n": inst.n,
        "f": inst.f,
        "k": inst.k,
        "m": inst.m,
        "ell": [int(x) for x in inst.ell],
        "dist": [_num(float(x)) for x in inst.dist.reshape(-1)],
    }
    return (json.dumps(doc, indent=2) + "\n").encode()


def load_instance(document: bytes) -> Instance:
    """Parse and fully validate an instance document."""
    try:
        doc = json.loads(document)
    except (json.JSONDecodeError, UnicodeDecodeError) as e:
        raise ParseError(f"not valid JSON: {e}") from e
    if not isinstance(doc, dict):
        raise ParseError("document is not a JSON object")
    for key in _SCHEMA_KEYS:
        if key not in doc:
            raise ParseError(f"missing field {key!r}")
    try:
        n, f, k, m = (int(doc[key]) for key in ("n", "f", "k", "m"))
        ell = np.array([int(x) for x in doc["ell"]], dtype=int)
        flat = np.array([float(x) for x in doc["dist"]], dtype=float)
    except (TypeError, ValueError) as e:
        raise ParseError(f"field has wrong type: {e}") from e
    total = n + f
    if flat.size != total * total:
        raise ParseError(
            f"dist has {flat.size} entries, expected {total * total}")
    inst = Instance(n=n, f=f, k=k, m=m, ell=ell,
                    dist=flat.reshape(total, total))
    validate_instance(inst)
    return inst


def _closure(edges: dict, total: int, cross: float | None = None) -> np.ndarray:
    """Minimal metric completion: all-pairs shortest paths over stated edges.

    Pairs left unreachable get the finite cross distance (when given).
    """
    d = np.full((total, total), np.inf)
    np.fill_diagonal(d, 0.0)
    for (x, y), w in edges.items():
        d[x, y] = min(d[x, y], w)
        d[y, x] = d[x, y]
    for mid in range(total):
        d = np.minimum(d, d[:, mid:mid + 1] + d[mid:mid + 1, :])
    if cross is not None:
        d[np.isinf(d)] = cross
    return d


def gen_gap_instance(k: int, M: float = 1000.0) -> Instance:
    """k identical gadgets: k big clients (ell=k), one small client (ell=1),
    and k facilities per gadget, every client at distance 1 from its gadget's
    facilities. Gadgets sit at finite distance M from each other. m = 2k.
    """
    if k < 1:
        raise ArgumentError(f"k must be >= 1, got {k}")
    if M <= 10:
        raise ArgumentError(f"M must exceed 10, got {M}")
    n = k * (k + 1)          # per gadget: k big + 1 small
    f = k * k
    ell = np.empty(n, dtype=int)
    edges = {}

    def client_id(g, j):      # j in 0..k-1 big, j == k small
        return g * (k + 1) + j

    def fac_id(g, j):
        return n + g * k + j

    for g in range(k):
        for j in range(k):
            ell[client_id(g, j)] = k
        ell[client_id(g, k)] = 1
        for c in range(k + 1):
            for j in range(k):
                edges[(client_id(g, c), fac_id(g, j))] = 1.0
    dist = _closure(edges, n + f, cross=M)
    inst = Instance(n=n, f=f, k=k, m=2 * k, ell=ell, dist=dist)
    validate_instance(inst)
    return inst


def gen_limit_instance(t: int, k: int, scale: float = 1.0) -> Instance:
    """Chain of clients v_1..v_t with ell = 1..t, consecutive clients at
    distance 2, and per-client groups of k facilities at distance 1. m = 1.

    All distances are multiplied by `scale`.
    """
    if t < 1:
        raise ArgumentError(f"t must be >= 1, got {t}")
    if k < t:
        raise ArgumentError(f"need k >= t, got k={k}, t={t}")
    n, f = t, t * k
    ell = np.arange(1, t + 1, dtype=int)
    edges = {}
    for a in range(t - 1):
        edges[(a, a + 1)] = 2.0 * scale
    for a in range(t):
        for j in range(k):
            edges[(a, n + a * k + j)] = 1.0 * scale
    dist = _closure(edges, n + f)
    inst = Instance(n=n, f=f, k=k, m=1, ell=ell, dist=dist)
    validate_instance(inst)
    return inst


def limit_instance_cov(t: int) -> dict:
    """The fractional coverage preset for the chain instance:
    cov of client a (1-based) is 1 / (a * H_t) with H_t the t-th harmonic number.
    """
    h_t = sum(1.0 / a for a in range(1, t + 1))
    return {a - 1: 1.0 / (a * h_t) for a in range(1, t + 1)}


def gen_random_instance(seed: int, n: int, f_count: int, k: int, m: int,
                        t: int) -> Instance:
    """Euclidean instance with points in a 2-D box; ell values drawn from
    exactly t distinct levels in [1, k], each level used at least once.
    """
    if not (1 <= t <= k):
        raise ArgumentError(f"need 1 <= t <= k, got t={t}, k={k}")
    if t > n:
        raise ArgumentError(f"need n >= t, got n={n}, t={t}")
    if not (1 <= m <= n):
        raise ArgumentError(f"need 1 <= m <= n, got m={m}, n={n}")
    if k > f_count:
        raise ArgumentError(f"need k <= f_count, got k={k}, f={f_count}")
    rng = np.random.default_rng(seed)
    pts = rng.uniform(0.0, 100.0, size=(n + f_count, 2))
    dist = np.sqrt(((pts[:, None, :] - pts[None, :, :]) ** 2).sum(axis=2))
    np.fill_diagonal(dist, 0.0)
    dist = np.minimum(dist, dist.T)  # enforce exact symmetry
    levels = 1 + rng.choice(k, size=t, replace=False)
    ell = np.concatenate([levels, rng.choice(levels, size=n - t)])
    rng.shuffle(ell)
    inst = Instance(n=n, f=f_count, k=k, m=m, ell=ell.astype(int), dist=dist)
    validate_instance(inst)
    return inst
