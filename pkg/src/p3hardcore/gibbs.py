"""Hard-core Hamiltonian, coarse-grained contour bounds and a heat-bath sampler."""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from itertools import product

import numpy as np

__all__ = [
    "ModelParams",
    "Energy",
    "CoarseSpin",
    "Contour",
    "GibbsError",
    "hamiltonian",
    "coarse_energy",
    "contour_weight",
    "tau_threshold",
    "certificate_holds",
    "activity_upper_bound",
    "polymer_series_bound",
    "heat_bath_kernel",
    "admissible_states",
    "glauber_sample",
    "SampleRun",
    "HardCoreSampler",
]

# Pattern-level constants of the contour sum: a bat has 2n + 1 = 149 interior
# vertices minus its loops' repeated visits, i.e. loops of total length 148
# carrying 74 particles plus the centre, and 2 * 2**3 = 16 from the centre
# choice and at most three loops.
LOOP_LENGTH = 148
BAT_COUNT = 75
LOOP_FACTOR = 2 * 2**3
ANIMAL_FACTOR = 5**3


class GibbsError(ValueError):
    pass


@dataclass(frozen=True)
class ModelParams:
    u: Fraction
    d: int = 5
    log2_spins: float = 150.0

    def __post_init__(self):
        if not self.u > 0:
            raise GibbsError("activity u must be positive")
        if self.d < 1:
            raise GibbsError("coarse degree d must be at least 1")

    @property
    def tau(self) -> float:
        return math.log(self.u)


@dataclass(frozen=True)
class Energy:
    """``-count * log(u)`` kept as the exact pair (count, u)."""

    count: Fraction
    u: Fraction

    @property
    def value(self) -> float:
        if self.count == 0:
            return 0.0
        return -float(self.count) * math.log(self.u)

    def __float__(self):
        return self.value


def _as_u(u) -> Fraction:
    if isinstance(u, float):
        return u  # irrational activities such as e stay floats
    return Fraction(u)


def hamiltonian(occupied, u, adjacency=None) -> Energy:
    """Energy of a configuration given by its occupied vertices."""
    occupied = set(occupied)
    if adjacency is not None:
        for v in occupied:
            if occupied.intersection(adjacency[v]):
                raise GibbsError(f"configuration occupies an edge at vertex {v}")
    return Energy(Fraction(len(occupied)), _as_u(u))


@dataclass(frozen=True)
class CoarseSpin:
    """Restriction of a configuration to one pattern.

    ``n_interior`` particles sit in the pattern interior, ``n_shared`` on the
    collar shared with neighbouring patterns.
    """

    pattern: int
    n_interior: int
    n_shared: int = 0
    perfect: bool = False


def coarse_energy(s: CoarseSpin, u) -> Energy:
    """Shared particles contribute sqrt(u) to each of their two patterns."""
    return Energy(Fraction(s.n_interior) + Fraction(s.n_shared, 2), _as_u(u))


@dataclass
class Contour:
    """Connected support on the coarse graph with the spins carried there.

    ``excess[v]`` is U(sigma(v)) - U(s_v) >= 0 for the spin at v, zero when the
    spin is perfect.
    """

    support: list[int]
    excess: dict[int, float]
    perfect: dict[int, bool]

    def defects(self) -> int:
        return sum(1 for v in self.support if not self.perfect[v])


def _connected(support, adjacency) -> bool:
    support = set(support)
    if not support:
        return False
    start = next(iter(support))
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for w in adjacency[u]:
            if w in support and w not in seen:
                seen.add(w)
                stack.append(w)
    return seen == support


def contour_weight(theta: Contour, u, coarse_adjacency, d: int = 5) -> float:
    """Weight exp(-sum of excess energies); checks the Peierls bound on the way."""
    if not _connected(theta.support, coarse_adjacency):
        raise GibbsError("contour support is not connected")
    size = len(theta.support)
    if theta.defects() * (d + 1) < size:
        raise GibbsError("fewer than |C|/(d+1) non-perfect spins")
    tau = math.log(u)
    total = 0.0
    for v in theta.support:
        if theta.perfect[v]:
            continue
        if theta.excess[v] < tau - 1e-12:
            raise GibbsError(f"spin at {v} beats the perfect one by less than tau")
        total += theta.excess[v]
    w = math.exp(-total)
    if w > math.exp(-tau * size / (d + 1)) * (1 + 1e-12):
        raise GibbsError("Peierls bound violated")
    return w


def tau_threshold(d: int, log2_spins: float) -> tuple[float, float]:
    """(tau0, the larger sufficient tau) for coarse degree d and |S| = 2**log2_spins."""
    if d < 1:
        raise GibbsError("d must be at least 1")
    log_s = log2_spins * math.log(2.0)
    tau0 = (d + 1) * (math.log(13 * math.e * d) + log_s)
    tau_big = 10 * (d + 1) * (log_s + 1 + math.log(d))
    if not certificate_holds(tau0 + 1e-9, d, log2_spins):
        raise GibbsError("geometric-series certificate fails above tau0")
    return tau0, tau_big


def certificate_holds(tau: float, d: int, log2_spins: float) -> bool:
    """(e d |S|) exp(-tau/(d+1) + 1/10) < 1/11, which makes the tail sum at most 1/10."""
    log_lhs = 1 + math.log(d) + log2_spins * math.log(2.0) - tau / (d + 1) + 0.1
    return log_lhs < -math.log(11)


def activity_upper_bound(d: int = 5, log2_spins: float = 150.0) -> dict:
    """log of the crude activity bound under two readings, compared with tau0.

    Read as a plain product, e**(10(d+1)) * |S| * e * d; read with the factor
    10(d+1) as an exponent, (|S| * e * d)**(10(d+1)), whose log is the larger
    sufficient tau returned by tau_threshold.
    """
    tau0, tau_big = tau_threshold(d, log2_spins)
    log_s = log2_spins * math.log(2.0)
    literal = 10 * (d + 1) + log_s + 1 + math.log(d)
    return {
        "tau0": tau0,
        "log_literal": literal,
        "log_exponent": tau_big,
        "literal_exceeds_tau0": literal > tau0,
        "exponent_exceeds_tau0": tau_big > tau0,
    }


def polymer_series_bound(u: float) -> dict:
    """Both sides of the contour-sum estimate at activity ``u``.

    Term ratios are evaluated in logs; the geometric sums are reported when
    the ratio is below 1.
    """
    if not u > 1:
        raise GibbsError("need u > 1")
    su = math.sqrt(u)
    log_lhs = (math.log(ANIMAL_FACTOR * math.e * LOOP_FACTOR)
               + LOOP_LENGTH * math.log1p(su) - BAT_COUNT * math.log(u))
    log_rhs = math.log(2000 * math.e) + LOOP_LENGTH / su - math.log(u)
    lhs, rhs = math.exp(min(log_lhs, 700)), math.exp(min(log_rhs, 700))
    if log_lhs > log_rhs + 1e-12:
        raise GibbsError("left ratio exceeds right ratio")

    def geo(r):
        return r / (1 - r) if r < 1 else math.inf

    return {
        "u": u,
        "lhs_ratio": lhs,
        "rhs_ratio": rhs,
        "lhs_sum": geo(lhs),
        "rhs_sum": geo(rhs),
        "converges": rhs < 1,
    }


def admissible_states(adjacency: dict) -> list[frozenset]:
    verts = sorted(adjacency)
    out = []
    for bits in product((0, 1), repeat=len(verts)):
        s = frozenset(v for v, b in zip(verts, bits) if b)
        if all(not (set(adjacency[v]) & s) for v in s):
            out.append(s)
    return out


def heat_bath_kernel(adjacency: dict, u) -> tuple[list[frozenset], dict]:
    """Exact transition probabilities of one random-site heat-bath update."""
    u = Fraction(u)
    states = admissible_states(adjacency)
    verts = sorted(adjacency)
    n = len(verts)
    p_occ = u / (1 + u)
    kernel: dict = {}
    for x in states:
        for v in verts:
            blocked = bool(set(adjacency[v]) & x)
            on = x | {v}
            off = x - {v}
            if blocked:
                moves = [(off, Fraction(1))]
            else:
                moves = [(on, p_occ), (off, 1 - p_occ)]
            for y, p in moves:
                kernel[(x, y)] = kernel.get((x, y), Fraction(0)) + p / n
    return states, kernel


def _csr(adjacency, n):
    from scipy.sparse import csr_matrix

    rows, cols = [], []
    for v in range(n):
        for w in adjacency[v]:
            rows.append(v)
            cols.append(w)
    return csr_matrix((np.ones(len(rows), dtype=np.int32), (rows, cols)), shape=(n, n))


def glauber_sample(adjacency, u, steps: int, seed: int, init, frozen=None,
                   method: str = "random-site", parity=None, observe=None) -> np.ndarray:
    """Heat-bath dynamics for the hard-core gas.

    ``adjacency`` is a list of neighbour lists over vertices 0..n-1, ``init`` a
    boolean occupancy array.  A site is vacated when a neighbour is occupied,
    otherwise occupied with probability u/(1+u).  ``random-site`` performs
    ``steps`` single-site updates; ``checkerboard`` performs ``steps`` sweeps,
    updating each parity class at once (valid on bipartite graphs, where a
    class has no internal edges).  Frozen sites never change.  ``observe``,
    if given, is called with the occupancy array after every update
    (random-site) or sweep (checkerboard).
    """
    n = len(adjacency)
    occ = np.array(init, dtype=bool).copy()
    if occ.shape != (n,):
        raise GibbsError("init has the wrong length")
    for v in np.flatnonzero(occ):
        if occ[list(adjacency[v])].any():
            raise GibbsError(f"inadmissible initial configuration at {v}")
    frozen = np.zeros(n, dtype=bool) if frozen is None else np.asarray(frozen, dtype=bool)
    u = float(u)
    p_occ = u / (1.0 + u)
    rng = np.random.default_rng(seed)
    if method == "random-site":
        free = np.flatnonzero(~frozen)
        if len(free) == 0:
            return occ
        chunk = 65536
        done = 0
        adj = [list(a) for a in adjacency]
        while done < steps:
            m = min(chunk, steps - done)
            sites = free[rng.integers(0, len(free), size=m)]
            coins = rng.random(m) < p_occ
            for v, c in zip(sites.tolist(), coins.tolist()):
                if c:
                    for w in adj[v]:
                        if occ[w]:
                            c = False
                            break
                occ[v] = c
                if observe is not None:
                    observe(occ)
            done += m
        return occ
    if method == "checkerboard":
        if parity is None:
            raise GibbsError("checkerboard updates need the parity labels")
        parity = np.asarray(parity)
        a = _csr(adjacency, n)
        classes = [np.flatnonzero((parity == p) & ~frozen) for p in (0, 1)]
        for _ in range(steps):
            for cls in classes:
                blocked = a[cls] @ occ.astype(np.int32) > 0
                occ[cls] = ~blocked & (rng.random(len(cls)) < p_occ)
            if observe is not None:
                observe(occ)
        return occ
    raise GibbsError(f"unknown method {method!r}")


@dataclass
class SampleRun:
    """Manifest of one sampler run; ``summary`` is filled after the run."""

    u: str
    steps: int
    seed: int
    boundary: str
    init: str
    method: str = "checkerboard"
    seed_kind: str = "sun"
    k: int = 8
    summary: dict = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True)


class HardCoreSampler:
    """Estimator-style wrapper: parameters in the constructor, ``fit`` runs the chain.

    After ``fit(graph, init)`` the final occupancy is in ``occupancy_`` and the
    particle density over the free sites in ``density_``.
    """

    def __init__(self, u=1.0, steps=100, seed=0, method="checkerboard"):
        self.u = u
        self.steps = steps
        self.seed = seed
        self.method = method

    def get_params(self, deep=True):
        return {"u": self.u, "steps": self.steps, "seed": self.seed, "method": self.method}

    def set_params(self, **params):
        for k, v in params.items():
            if k not in self.get_params():
                raise ValueError(f"unknown parameter {k!r}")
            setattr(self, k, v)
        return self

    def fit(self, graph, init, frozen=None):
        self.occupancy_ = glauber_sample(graph.adjacency, float(Fraction(self.u)), self.steps,
                                         self.seed, init, frozen, self.method, graph.parity)
        free = np.ones(graph.n, dtype=bool) if frozen is None else ~np.asarray(frozen)
        self.density_ = float(self.occupancy_[free].mean()) if free.any() else 0.0
        return self
