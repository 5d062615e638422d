"""Site graph of a tiling: vertices, rhombus sides, parity, vertex-star classes."""
from __future__ import annotations

import json
from collections import Counter, deque
from dataclasses import dataclass, field

import numpy as np

from .golden import CycloPoint
from .tiling import THICK, THIN, Tiling

__all__ = [
    "ATLAS_LABELS",
    "SiteGraph",
    "build_graph",
    "bipartition",
    "classify_vertex_star",
    "classify_all",
    "edge_direction",
    "graph_to_json",
    "GraphError",
    "star_sequence",
    "atlas_census",
]

ATLAS_LABELS = ("kite", "deuce", "jack", "ace", "king", "queen", "star", "sun", "incomplete")

# Corner angles in units of 36 degrees: thin acute/obtuse 1/4, thick acute/obtuse 2/3.
_APEX_ANGLE = {THIN: 1, THICK: 3}
_BASE_ANGLE = {THIN: 4, THICK: 2}

# Cyclic corner-angle sequences (counter-clockwise, canonical rotation) of the
# seven geometric vertex stars.  The two five-fold stars share a sequence and are
# told apart by the orientation of the split diagonals, see classify_vertex_star.
_STAR_BY_SEQUENCE = {
    (3, 3, 4): "kite",
    (2, 4, 4): "deuce",
    (2, 2, 2, 4): "jack",
    (1, 2, 1, 3, 3): "ace",
    (1, 1, 2, 2, 2, 2): "king",
    (1, 1, 2, 1, 1, 2, 2): "queen",
    (2, 2, 2, 2, 2): "sun",
}


class GraphError(RuntimeError):
    pass


def _unit_index() -> dict[CycloPoint, int]:
    return {CycloPoint.unit(d): d for d in range(10)}


_UNITS = _unit_index()


def edge_direction(v: CycloPoint, w: CycloPoint) -> int:
    """Direction 0..9 (multiples of 36 degrees) of the unit edge v -> w."""
    try:
        return _UNITS[w - v]
    except KeyError:
        raise GraphError(f"{v} -> {w} is not a unit edge") from None


def _canonical_rotation(seq):
    n = len(seq)
    return min(tuple(seq[i:] + seq[:i]) for i in range(n))


@dataclass
class SiteGraph:
    points: list[CycloPoint]
    index: dict[CycloPoint, int]
    adjacency: list[list[int]]
    parity: np.ndarray
    # per vertex: list of (first_edge_direction, angle, rhombus index, corner position)
    corners: list[list[tuple]] = field(repr=False)
    labels: list[str] | None = field(default=None, repr=False)

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [(u, w) for u, nb in enumerate(self.adjacency) for w in nb if u < w]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def angle_sum(self, v: int) -> int:
        return sum(c[1] for c in self.corners[v])

    def is_complete(self, v: int) -> bool:
        return self.angle_sum(v) == 10

    def complete_mask(self) -> np.ndarray:
        return np.array([self.is_complete(v) for v in range(self.n)], dtype=bool)

    def coords(self) -> np.ndarray:
        return np.array([p.to_cartesian() for p in self.points], dtype=float)

    def csr(self):
        from scipy.sparse import csr_matrix

        rows, cols = [], []
        for u, nb in enumerate(self.adjacency):
            rows.extend([u] * len(nb))
            cols.extend(nb)
        data = np.ones(len(rows), dtype=np.int8)
        return csr_matrix((data, (rows, cols)), shape=(self.n, self.n))

    def bfs_distances(self, sources, allowed=None, limit=None) -> dict[int, int]:
        dist = {s: 0 for s in sources}
        queue = deque(sources)
        while queue:
            u = queue.popleft()
            if limit is not None and dist[u] >= limit:
                continue
            for w in self.adjacency[u]:
                if w not in dist and (allowed is None or w in allowed):
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return dist


def build_graph(t: Tiling) -> SiteGraph:
    """Graph of the complete rhombi of ``t``; vertices are deduplicated exactly."""
    index: dict[CycloPoint, int] = {}
    points: list[CycloPoint] = []
    for r in t.rhombi:
        for v in r.vertices:
            if v not in index:
                index[v] = len(points)
                points.append(v)
    # canonical order so ids do not depend on rhombus order
    order = sorted(range(len(points)), key=lambda i: points[i].coeffs)
    points = [points[i] for i in order]
    index = {p: i for i, p in enumerate(points)}

    nbrs: list[set[int]] = [set() for _ in points]
    corners: list[list[tuple]] = [[] for _ in points]
    for ri, r in enumerate(t.rhombi):
        ids = [index[v] for v in r.vertices]
        for i in range(4):
            u, w = ids[i], ids[(i + 1) % 4]
            nbrs[u].add(w)
            nbrs[w].add(u)
        for i in range(4):
            v, nxt, prv = r.vertices[i], r.vertices[(i + 1) % 4], r.vertices[(i - 1) % 4]
            angle = _APEX_ANGLE[r.kind] if i % 2 == 0 else _BASE_ANGLE[r.kind]
            d1, d2 = edge_direction(v, nxt), edge_direction(v, prv)
            # the corner spans counter-clockwise from its first edge by `angle`
            first = d1 if (d1 + angle) % 10 == d2 else d2
            if (first + angle) % 10 not in (d1, d2):
                raise GraphError("corner angle inconsistent with edge directions")
            corners[ids[i]].append((first, angle, ri, i))
    adjacency = [sorted(s) for s in nbrs]
    g = SiteGraph(points, index, adjacency, np.zeros(len(points), dtype=np.int8), corners)
    if g.n:
        g.parity = bipartition(g)
    return g


def bipartition(g: SiteGraph) -> np.ndarray:
    """Proper 2-colouring; parity 0 ("even") is the colour of the smallest coordinate tuple.

    Each connected component is rooted at its own smallest vertex.
    """
    colour = np.full(g.n, -1, dtype=np.int8)
    order = sorted(range(g.n), key=lambda i: g.points[i].coeffs)
    for root in order:
        if colour[root] >= 0:
            continue
        colour[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in g.adjacency[u]:
                if colour[w] < 0:
                    colour[w] = 1 - colour[u]
                    queue.append(w)
                elif colour[w] == colour[u]:
                    raise GraphError(f"odd cycle through vertices {u} and {w}")
    return colour


def star_sequence(g: SiteGraph, v: int) -> tuple[int, ...] | None:
    """Counter-clockwise corner angles around ``v`` (canonical rotation), None if clipped."""
    cs = g.corners[v]
    if sum(c[1] for c in cs) != 10:
        return None
    seq = [c[1] for c in sorted(cs)]
    return _canonical_rotation(seq)


def classify_vertex_star(g: SiteGraph, t: Tiling, v: int) -> str:
    seq = star_sequence(g, v)
    if seq is None:
        return "incomplete"
    try:
        label = _STAR_BY_SEQUENCE[seq]
    except KeyError:
        raise GraphError(f"vertex {v} has an unknown star {seq}") from None
    if label == "sun":
        # five thick acute corners: star when every split diagonal starts at v
        # (its substitution point lies nearer v), sun when every one ends there.
        p = g.points[v]
        rh = t.rhombi
        starts = 0
        for _, _, ri, pos in g.corners[v]:
            h = t.halves[rh[ri].halves[0]]
            starts += h.b == p
        if starts not in (0, 5):
            raise GraphError(f"mixed decoration at five-fold vertex {v}")
        label = "star" if starts == 5 else "sun"
    return label


def classify_all(g: SiteGraph, t: Tiling) -> list[str]:
    g.labels = [classify_vertex_star(g, t, v) for v in range(g.n)]
    return g.labels


def atlas_census(labels, mask=None) -> Counter:
    if mask is None:
        return Counter(l for l in labels if l != "incomplete")
    return Counter(l for l, m in zip(labels, mask) if m and l != "incomplete")


def graph_to_json(g: SiteGraph) -> str:
    doc = {
        "format": "p3-graph/1",
        "vertices": [
            {"id": i, "coord": list(p.coeffs), "parity": "even" if g.parity[i] == 0 else "odd"}
            for i, p in enumerate(g.points)
        ],
        "edges": [list(e) for e in g.edges],
        "atlas": g.labels,
    }
    return json.dumps(doc, separators=(",", ":"))
