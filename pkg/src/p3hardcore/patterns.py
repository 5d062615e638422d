"""The five basic patterns and the partition of a tiling into their interiors.

Each pattern kind is stored as a template: the positions of its interior
vertices relative to the centre, in a frame fixed by the centre's supertiling
vertex star, together with the perfect occupancy.  Templates ship as package
data and can be regenerated with :func:`extract_templates`.
"""
from __future__ import annotations

import json
from collections import Counter, defaultdict
from dataclasses import dataclass
from importlib import resources

import numpy as np

from .golden import CycloPoint
from .graph import SiteGraph

__all__ = [
    "PATTERN_KINDS",
    "PATTERN_OF_LABEL",
    "PERFECT_COUNT",
    "RKTT_RULES",
    "PatternError",
    "Template",
    "PatternInstance",
    "Partition",
    "map_star_to_pattern",
    "center_orientation",
    "load_templates",
    "templates_to_json",
    "templates_from_json",
    "extract_templates",
    "partition_patches",
    "partition_to_json",
    "Partitioner",
]

PATTERN_KINDS = ("urchin", "starfish", "snail", "turtle", "bat")
PERFECT_COUNT = {"urchin": 16, "starfish": 51, "snail": 23, "turtle": 63, "bat": 75}
PATTERN_OF_LABEL = {
    "deuce": "bat",
    "jack": "turtle",
    "ace": "snail",
    "king": "urchin",
    "queen": "urchin",
    "star": "urchin",
    "sun": "starfish",
}

# face census of an RKTT star -> pattern
RKTT_RULES = (
    ({"kite": 5}, "starfish"),
    ({"rhombus": 5}, "urchin"),
    ({"rhombus": 2, "trapeze": 2}, "urchin"),
    ({"kite": 1, "trapeze": 2}, "urchin"),
    ({"rhombus": 2, "kite": 1}, "snail"),
    ({"kite": 1, "trapeze": 4}, "turtle"),
    ({"rhombus": 1, "kite": 2, "trapeze": 2}, "bat"),
)


class PatternError(RuntimeError):
    pass


def map_star_to_pattern(census) -> str:
    """Pattern for an RKTT star given its face census; raises when no rule applies."""
    c = {k: v for k, v in dict(census).items() if v}
    for rule, kind in RKTT_RULES:
        if c == rule:
            return kind
    raise PatternError(f"RKTT star {sorted(c.items())} matches no rule")


def center_orientation(g: SiteGraph, v: int) -> int:
    """Direction 0..9 of the first edge of the canonical rotation of v's star.

    Five-fold stars have five candidates; the smallest direction is used.
    """
    cs = sorted(g.corners[v])
    seq = [c[1] for c in cs]
    n = len(seq)
    rots = [tuple(seq[j:] + seq[:j]) for j in range(n)]
    m = min(rots)
    return min(cs[j][0] for j in range(n) if rots[j] == m)


@dataclass(frozen=True)
class Template:
    label: str  # supertiling atlas label of the centre
    kind: str
    cells: tuple  # ((a0, a1, a2, a3), occupied) relative to the centre, frame-aligned
    edges: tuple = ()  # pairs of cell indices joined by a tiling edge

    @property
    def size(self) -> int:
        return len(self.cells)

    @property
    def count(self) -> int:
        return sum(1 for _, o in self.cells if o)

    @property
    def center_index(self) -> int:
        return next(i for i, (c, _) in enumerate(self.cells) if c == (0, 0, 0, 0))

    def adjacency(self) -> dict[int, set[int]]:
        adj: dict[int, set[int]] = {i: set() for i in range(len(self.cells))}
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return adj

    def perfect(self) -> set[int]:
        return {i for i, (_, o) in enumerate(self.cells) if o}

    @property
    def radius(self) -> float:
        return max(abs(CycloPoint(*c).to_complex()) for c, _ in self.cells)

    def place(self, center: CycloPoint, orientation: int):
        """Yield (point, occupied) for a centre and orientation."""
        rot = CycloPoint.unit(orientation)
        for c, o in self.cells:
            yield center + CycloPoint(*c) * rot, o


def templates_to_json(templates: dict[str, Template]) -> str:
    doc = {
        "format": "p3-templates/1",
        "templates": {
            lab: {
                "kind": t.kind,
                "cells": [list(c) + [int(o)] for c, o in t.cells],
                "edges": [list(e) for e in t.edges],
            }
            for lab, t in sorted(templates.items())
        },
    }
    return json.dumps(doc, indent=1)


def templates_from_json(text: str) -> dict[str, Template]:
    doc = json.loads(text)
    if doc.get("format") != "p3-templates/1":
        raise PatternError("not a p3-templates/1 document")
    out = {}
    for lab, d in doc["templates"].items():
        cells = tuple((tuple(c[:4]), bool(c[4])) for c in d["cells"])
        edges = tuple(tuple(e) for e in d.get("edges", []))
        out[lab] = Template(lab, d["kind"], cells, edges)
    return out


def load_templates() -> dict[str, Template]:
    text = resources.files("p3hardcore").joinpath("data/templates.json").read_text()
    return templates_from_json(text)


@dataclass
class PatternInstance:
    kind: str
    label: str
    center: int
    interior: frozenset
    sm_boundary: frozenset
    perfect: frozenset
    yellow_edges: list
    orientation: int
    super_vertex: int = -1
    complete: bool = True  # False when the template leaves the patch

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "center_label": self.label,
            "center": self.center,
            "interior": sorted(self.interior),
            "boundary": sorted(self.sm_boundary),
            "yellow_edges": [list(e) for e in self.yellow_edges],
            "orientation": self.orientation,
        }


@dataclass
class Partition:
    """Pattern instances plus the coverage bookkeeping over the safe window."""

    instances: list[PatternInstance]
    window: np.ndarray  # bool mask of safe vertices
    cover: np.ndarray  # how many instance interiors contain each vertex
    owner: np.ndarray  # instance index per vertex, -1 if none or several
    clipped: int = 0  # centres whose template leaves the patch

    @property
    def uncovered(self) -> list[int]:
        return [int(v) for v in np.flatnonzero(self.window & (self.cover == 0))]

    @property
    def doubly_covered(self) -> list[int]:
        return [int(v) for v in np.flatnonzero(self.window & (self.cover > 1))]

    @property
    def is_partition(self) -> bool:
        return not self.uncovered and not self.doubly_covered

    def kind_census(self) -> Counter:
        return Counter(p.kind for p in self.instances)

    def full_instances(self) -> list[PatternInstance]:
        return [p for p in self.instances if p.complete]

    def complete_window(self) -> list[PatternInstance]:
        """Instances whose interior lies entirely in the safe window."""
        w = self.window
        return [p for p in self.instances if all(w[v] for v in p.interior)]


def partition_patches(g: SiteGraph, sg, templates: dict[str, Template] | None = None,
                      base_tiling=None) -> Partition:
    """Place the templates at every supertiling vertex that is a pattern centre.

    ``sg`` is the level-4 supertiling of the tiling behind ``g``.  Kite-type
    super vertices are not centres.  The safe window consists of the vertices
    of complete supertiles all of whose nearby super vertices are complete.
    """
    if templates is None:
        templates = load_templates()
    radius = max(t.radius for t in templates.values())
    instances: list[PatternInstance] = []
    cover = np.zeros(g.n, dtype=np.int32)
    clipped = 0
    for i, lab in enumerate(sg.labels):
        if lab not in PATTERN_OF_LABEL:
            continue
        c = sg.back_map[i]
        if c is None:
            clipped += 1
            continue
        tpl = templates[lab]
        orient = center_orientation(sg.graph, i)
        ids, occ, missing = [], [], False
        for p, o in tpl.place(g.points[c], orient):
            v = g.index.get(p)
            if v is None:
                missing = True
                continue
            ids.append(v)
            if o:
                occ.append(v)
        if missing:
            clipped += 1
        interior = frozenset(ids)
        for v in ids:
            cover[v] += 1
        instances.append(PatternInstance(
            PATTERN_OF_LABEL[lab], lab, c, interior, frozenset(), frozenset(occ), [], orient, i,
            not missing,
        ))
    # boundary collars and yellow edges need the global perfect configuration
    perfect = set()
    for p in instances:
        perfect |= p.perfect
    for p in instances:
        collar = {w for v in p.interior for w in g.adjacency[v]} - p.interior
        p.sm_boundary = frozenset(collar)
        region = p.interior | collar
        p.yellow_edges = sorted(
            (u, w) for u in p.interior for w in g.adjacency[u]
            if w in region and u not in perfect and w not in perfect and (u < w or w not in p.interior)
        )
    window = _window_mask(g, sg, radius)
    owner = np.full(g.n, -1, dtype=np.int64)
    for k, p in enumerate(instances):
        for v in p.interior:
            if cover[v] == 1:
                owner[v] = k
    return Partition(instances, window, cover, owner, clipped)


def _window_mask(g: SiteGraph, sg, radius: float) -> np.ndarray:
    from scipy.spatial import cKDTree

    from .supertiling import _grow

    good = np.array([lab != "incomplete" and b is not None for lab, b in zip(sg.labels, sg.back_map)])
    sxy = np.array([_grow(p, sg.level).to_cartesian() for p in sg.graph.points]) if sg.graph.n else np.zeros((0, 2))
    xy = g.coords()
    mask = np.zeros(g.n, dtype=bool)
    if not good.any():
        return mask
    # supertiles with complete corners, rasterised through their half-triangles
    tri = []
    for h in sg.tiling.halves:
        ids = [sg.graph.index.get(p) for p in h.vertices]
        if all(i is not None and good[i] for i in ids):
            tri.append(np.array([_grow(p, sg.level).to_cartesian() for p in h.vertices]))
    for t in tri:
        mask |= _in_triangle(xy, t)
    if (~good).any():
        d, _ = cKDTree(sxy[~good]).query(xy)
        mask &= d > radius
    return mask


def _in_triangle(xy: np.ndarray, t: np.ndarray, eps: float = 1e-9) -> np.ndarray:
    a, b, c = t
    def cross(p, q, r):
        return (q[0] - p[0]) * (r[:, 1] - p[1]) - (q[1] - p[1]) * (r[:, 0] - p[0])
    d1, d2, d3 = cross(a, b, xy), cross(b, c, xy), cross(c, a, xy)
    neg = (d1 < -eps) | (d2 < -eps) | (d3 < -eps)
    pos = (d1 > eps) | (d2 > eps) | (d3 > eps)
    return ~(neg & pos)


def partition_to_json(part: Partition) -> str:
    doc = {
        "format": "p3-partition/1",
        "patterns": [p.to_dict() for p in part.instances],
        "window": [int(v) for v in np.flatnonzero(part.window)],
    }
    return json.dumps(doc, separators=(",", ":"))


def extract_templates(g: SiteGraph, sg, occupied: np.ndarray, max_radius: float = 9.0,
                      margin: float = 12.0, max_rounds: int = 50) -> dict[str, Template]:
    """Recover the pattern templates from a ground state by integer programming.

    Unknowns are template cells, i.e. (centre label, frame-relative position)
    pairs.  Constraints: every vertex far from the patch edge lies in exactly
    one placed template; a template never leaves the yellow-bounded component
    of its centre; every vacant cell has two occupied neighbours in the same
    template.  Among feasible choices the most compact one is kept.  Each
    solution is then checked with the exact MIS solver; a second maximizer in
    any instance becomes a cut and the program is solved again.
    """
    from scipy.optimize import Bounds, LinearConstraint, milp
    from scipy.sparse import coo_matrix
    from scipy.sparse.csgraph import connected_components
    from scipy.spatial import cKDTree

    from .counting import max_independent_set

    occupied = np.asarray(occupied, dtype=bool)
    xy = g.coords()
    # components after removing vacant-vacant edges
    rows, cols = [], []
    for u, w in g.edges:
        if occupied[u] or occupied[w]:
            rows += [u, w]
            cols += [w, u]
    from scipy.sparse import csr_matrix

    a = csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(g.n, g.n))
    _, comp = connected_components(a, directed=False)

    incomplete = np.array([sum(c[1] for c in g.corners[v]) != 10 for v in range(g.n)])
    dist_edge = cKDTree(xy[incomplete]).query(xy)[0] if incomplete.any() else np.full(g.n, np.inf)

    centers, frames, labels = [], {}, {}
    for i, lab in enumerate(sg.labels):
        c = sg.back_map[i]
        if lab in PATTERN_OF_LABEL and c is not None:
            centers.append(c)
            frames[c] = CycloPoint.unit(-center_orientation(sg.graph, i))
            labels[c] = lab
    ctree = cKDTree(xy[centers])

    keys: dict = {}

    def key(c, v):
        rel = (g.points[v] - g.points[c]) * frames[c]
        kk = (labels[c], rel.coeffs)
        j = keys.get(kk)
        if j is None:
            j = keys[kk] = len(keys)
        return j

    cons: list = []
    pair: dict = {}
    forbid = set()
    for v in np.flatnonzero(dist_edge > margin):
        v = int(v)
        ent = []
        for ci in ctree.query_ball_point(xy[v], max_radius):
            c = centers[ci]
            j = key(c, v)
            if comp[c] == comp[v]:
                pair[(c, v)] = j
                ent.append((j, 1))
            else:
                forbid.add(j)
        cons.append((ent, 1, 1))
    cons.append(([(j, 1) for j in sorted(forbid)], 0, 0))
    for (c, v), j in list(pair.items()):
        if occupied[v]:
            continue
        cons.append(([(j, 2)] + [(key(c, w), -1) for w in g.adjacency[v] if occupied[w]], -np.inf, 0))

    inv = {j: kk for kk, j in keys.items()}
    order = sorted(range(len(keys)), key=lambda j: (inv[j][0], inv[j][1]))
    cost = np.zeros(len(keys))
    for rank, j in enumerate(order):
        r2 = abs(CycloPoint(*inv[j][1]).to_complex()) ** 2
        cost[j] = r2 + 1e-6 * rank / len(keys)

    def solve():
        r, c_, vals, lo, hi = [], [], [], [], []
        for i, (ent, l, h) in enumerate(cons):
            for j, val in ent:
                r.append(i)
                c_.append(j)
                vals.append(val)
            lo.append(l)
            hi.append(h)
        mat = coo_matrix((vals, (r, c_)), shape=(len(cons), len(keys))).tocsr()
        res = milp(cost, constraints=[LinearConstraint(mat, lo, hi)],
                   integrality=np.ones(len(keys)), bounds=Bounds(0, 1))
        if res.status != 0:
            raise PatternError(f"template program infeasible: {res.message}")
        return np.round(res.x).astype(int)

    for _ in range(max_rounds):
        x = solve()
        inst = defaultdict(set)
        for (c, v), j in pair.items():
            if x[j]:
                inst[c].add(v)
        size = Counter(inv[j][0] for j in range(len(keys)) if x[j])
        cuts = 0
        for c, members in inst.items():
            if len(members) != size[labels[c]]:
                continue  # clipped by the margin
            adj = {v: set(g.adjacency[v]) & members for v in members}
            perf = frozenset(v for v in members if occupied[v])
            res = max_independent_set(adj, keep=8)
            if res.unique and res.best_configs[0] == perf:
                continue
            for m in res.best_configs:
                if m == perf:
                    continue
                s = [v for v in m if not occupied[v]]
                nfull = {w for v in s for w in g.adjacency[v] if occupied[w]}
                ent = [(key(c, w), 1) for w in nfull - members] + [(key(c, v), -1) for v in s]
                cons.append((ent, 1 - len(s), np.inf))
                cuts += 1
        if cuts == 0:
            break
    else:
        raise PatternError("template extraction did not converge")

    # occupancy must be the same at a cell in every instance
    cell_occ: dict = defaultdict(set)
    for (c, v), j in pair.items():
        if x[j]:
            cell_occ[j].add(bool(occupied[v]))
    out = {}
    for lab in sorted(set(labels.values())):
        cells = []
        for j in range(len(keys)):
            if x[j] and inv[j][0] == lab:
                occ = cell_occ.get(j, set())
                if len(occ) != 1:
                    raise PatternError(f"cell {inv[j]} has no consistent occupancy")
                cells.append((inv[j][1], occ.pop()))
        cells.sort(key=lambda t: (round(abs(CycloPoint(*t[0]).to_complex()), 9), t[0]))
        pos = {c: i for i, (c, _) in enumerate(cells)}
        # edges from every full instance; they must agree
        edge_sets = set()
        for c, members in inst.items():
            if labels[c] != lab or len(members) != len(cells):
                continue
            rel = {v: ((g.points[v] - g.points[c]) * frames[c]).coeffs for v in members}
            edge_sets.add(tuple(sorted(
                tuple(sorted((pos[rel[u]], pos[rel[w]])))
                for u in members for w in g.adjacency[u] if w in members and u < w
            )))
        if len(edge_sets) != 1:
            raise PatternError(f"{lab} instances disagree on their internal edges")
        out[lab] = Template(lab, PATTERN_OF_LABEL[lab], tuple(cells), edge_sets.pop())
    return out


class Partitioner:
    """Estimator-style front end: ``fit(tiling)`` builds graph, supertiling and partition."""

    def __init__(self, level=4, templates=None):
        self.level = level
        self.templates = templates

    def get_params(self, deep=True):
        return {"level": self.level, "templates": self.templates}

    def set_params(self, **params):
        for k, v in params.items():
            if k not in self.get_params():
                raise ValueError(f"unknown parameter {k!r}")
            setattr(self, k, v)
        return self

    def fit(self, tiling, graph=None):
        from .graph import build_graph, classify_all
        from .supertiling import build_supertiling

        g = graph if graph is not None else build_graph(tiling)
        if g.labels is None:
            classify_all(g, tiling)
        self.graph_ = g
        self.supertiling_ = build_supertiling(tiling, g, self.level)
        self.partition_ = partition_patches(g, self.supertiling_, self.templates)
        return self

    def transform(self, tiling=None):
        """Owner array: instance index per vertex (-1 outside or ambiguous)."""
        return self.partition_.owner
