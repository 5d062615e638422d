"""Configurations, the perfect configuration, yellow edges and densities."""
from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from .golden import GoldenNumber

__all__ = [
    "Configuration",
    "ConfigurationError",
    "YellowComponent",
    "DENSITY_TERMS",
    "exact_density",
    "mis_configuration",
    "sublattice",
    "yellow_edges",
    "yellow_loops",
    "window_density",
    "perfect_configuration",
    "urchin_flip",
    "configuration_to_json",
    "configuration_from_json",
]

G = GoldenNumber

# (pattern, particles in the perfect configuration, frequency of its centre
# among supertiling vertices); the urchin appears once per centre type.
DENSITY_TERMS = (
    ("bat", 75, G(5, -3)),
    ("turtle", 63, G(-8, 5)),
    ("snail", 23, G(-3, 2)),
    ("urchin", 16, G(-21, 13)),
    ("urchin", 16, G(13, -8)),
    ("urchin", 16, G(Fraction(47, 5), Fraction(-29, 5))),
    ("starfish", 51, G(Fraction(18, 5), Fraction(-11, 5))),
)


class ConfigurationError(ValueError):
    pass


@dataclass(frozen=True)
class Configuration:
    """Occupied vertex ids; ``domain`` is the set of ids the configuration speaks for."""

    occupied: frozenset
    domain: frozenset

    @classmethod
    def from_mask(cls, mask, domain=None) -> Configuration:
        mask = np.asarray(mask, dtype=bool)
        dom = frozenset(range(len(mask))) if domain is None else frozenset(domain)
        return cls(frozenset(int(v) for v in np.flatnonzero(mask) if int(v) in dom), dom)

    def mask(self, n: int) -> np.ndarray:
        m = np.zeros(n, dtype=bool)
        m[list(self.occupied)] = True
        return m

    @property
    def count(self) -> int:
        return len(self.occupied)

    def violations(self, adjacency) -> list[tuple[int, int]]:
        return sorted((u, w) for u in self.occupied for w in adjacency[u] if u < w and w in self.occupied)

    def is_admissible(self, adjacency) -> bool:
        return not self.violations(adjacency)

    def check(self, adjacency) -> Configuration:
        bad = self.violations(adjacency)
        if bad:
            raise ConfigurationError(f"occupied edges, first {bad[0]}")
        return self

    def restrict(self, vertices) -> Configuration:
        vertices = frozenset(vertices)
        return Configuration(self.occupied & vertices, vertices)


def exact_density() -> GoldenNumber:
    """Particles per vertex: frequency-weighted pattern counts over phi**8."""
    total = sum((n * f for _, n, f in DENSITY_TERMS), G(0))
    return total / G.phi_power(8)


def sublattice(g, parity: int = 0, domain=None) -> Configuration:
    return Configuration.from_mask(g.parity == parity, domain)


def mis_configuration(g, domain=None) -> Configuration:
    """A maximum independent set of the (bipartite) site graph, via Koenig's theorem.

    Used as an independent cross-check of the template construction.
    """
    verts = sorted(domain) if domain is not None else list(range(g.n))
    vs = set(verts)
    ev = [v for v in verts if g.parity[v] == 0]
    od = [v for v in verts if g.parity[v] == 1]
    ei = {v: i for i, v in enumerate(ev)}
    oi = {v: i for i, v in enumerate(od)}
    rows, cols = [], []
    for v in ev:
        for w in g.adjacency[v]:
            if w in oi:
                rows.append(ei[v])
                cols.append(oi[w])
    a = csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(len(ev), len(od)))
    m = maximum_bipartite_matching(a, perm_type="column")
    match_e = {ev[i]: od[j] for i, j in enumerate(m) if j >= 0}
    match_o = {w: v for v, w in match_e.items()}
    reach = set()
    stack = [v for v in ev if v not in match_e]
    reach.update(stack)
    while stack:
        v = stack.pop()
        for w in g.adjacency[v]:
            if w in vs and w not in reach:
                reach.add(w)
                u = match_o.get(w)
                if u is not None and u not in reach:
                    reach.add(u)
                    stack.append(u)
    occ = {v for v in ev if v in reach} | {w for w in od if w not in reach}
    return Configuration(frozenset(occ), frozenset(verts))


def yellow_edges(c: Configuration, g) -> list[tuple[int, int]]:
    """Edges inside the domain with both endpoints vacant."""
    dom = c.domain
    return [
        (u, w)
        for u in sorted(dom)
        if u not in c.occupied
        for w in g.adjacency[u]
        if u < w and w in dom and w not in c.occupied
    ]


@dataclass
class YellowComponent:
    kind: str  # "loop", "path" (clipped by the domain edge) or "branched"
    vertices: list[int]
    edges: list[tuple[int, int]]


def yellow_loops(c: Configuration, g, complete=None) -> list[YellowComponent]:
    """Connected components of the yellow edges, classified.

    A component is a closed loop when every vertex has yellow degree 2 and
    lies in ``complete`` (vertices whose whole star is inside the domain);
    otherwise a path if it is clipped, branched if it forks inside.
    """
    edges = yellow_edges(c, g)
    if complete is None:
        complete = {v for v in c.domain if all(w in c.domain for w in g.adjacency[v])}
    nb = defaultdict(list)
    for u, w in edges:
        nb[u].append(w)
        nb[w].append(u)
    seen = set()
    out = []
    for s in sorted(nb):
        if s in seen:
            continue
        comp = []
        stack = [s]
        seen.add(s)
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in nb[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        comp.sort()
        cs = set(comp)
        cedges = [(u, w) for u, w in edges if u in cs]
        clipped = any(v not in complete for v in comp)
        branched = any(len(nb[v]) > 2 for v in comp if v in complete)
        if branched:
            kind = "branched"
        elif clipped or any(len(nb[v]) != 2 for v in comp):
            kind = "path"
        else:
            kind = "loop"
        out.append(YellowComponent(kind, comp, cedges))
    return out


def window_density(c: Configuration, window) -> Fraction:
    window = set(window)
    if not window:
        raise ConfigurationError("empty window")
    if not window <= c.domain:
        raise ConfigurationError("window leaves the configuration domain")
    return Fraction(len(c.occupied & window), len(window))


def perfect_configuration(instances, g) -> Configuration:
    """Concatenate the perfect occupancies of pattern instances."""
    occ = set()
    dom = set()
    for p in instances:
        if len(p.perfect) != _perfect_count(p.kind):
            raise ConfigurationError(f"{p.kind} at {p.center} carries {len(p.perfect)} particles")
        occ |= p.perfect
        dom |= p.interior
    return Configuration(frozenset(occ), frozenset(dom)).check(g.adjacency)


def _perfect_count(kind: str) -> int:
    from .patterns import PERFECT_COUNT

    return PERFECT_COUNT[kind]


def urchin_flip(c: Configuration, g, template=None, centers=None) -> tuple[Configuration, list[int]]:
    """Flip urchin-shaped patches of a sublattice configuration.

    ``centers`` defaults to every vertex with a five-fold "star" star.  An
    urchin is flipped when its sixteen-vertex side is the vacant sublattice:
    the occupied side (fifteen vertices) is emptied and the other side filled.
    Returns the new configuration and the flipped centres; each flip adds
    exactly one particle.
    """
    from .patterns import center_orientation, load_templates

    if template is None:
        template = load_templates()["star"]
    if centers is None:
        if g.labels is None:
            raise ConfigurationError("classify the graph first")
        centers = [v for v, lab in enumerate(g.labels) if lab == "star"]
    occ = set(c.occupied)
    flipped = []
    for v in centers:
        ids = [g.index.get(p) for p, _ in template.place(g.points[v], center_orientation(g, v))]
        if None in ids or not set(ids) <= c.domain:
            continue
        inside = set(ids)
        vacant_side = [w for w in ids if w not in occ]
        full_side = [w for w in ids if w in occ]
        if len(vacant_side) != template.count or len(full_side) != template.size - template.count:
            continue
        # the new particles may only touch vertices of the patch
        if any(x not in inside for w in vacant_side for x in g.adjacency[w]):
            continue
        before = len(occ)
        occ -= set(full_side)
        occ |= set(vacant_side)
        if len(occ) != before + 1:
            raise ConfigurationError(f"urchin flip at {v} changed the count by {len(occ) - before}")
        flipped.append(v)
    out = Configuration(frozenset(occ), c.domain).check(g.adjacency)
    return out, flipped


def configuration_to_json(c: Configuration, domain_ref: str = "") -> str:
    doc = {
        "format": "p3-configuration/1",
        "domain_ref": domain_ref,
        "domain": sorted(c.domain),
        "occupied": sorted(c.occupied),
    }
    return json.dumps(doc, separators=(",", ":"))


def configuration_from_json(text: str) -> Configuration:
    doc = json.loads(text)
    if doc.get("format") != "p3-configuration/1":
        raise ConfigurationError("not a p3-configuration/1 document")
    return Configuration(frozenset(doc["occupied"]), frozenset(doc["domain"]))
