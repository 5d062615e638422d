"""Level-4 supertiles and the RKTT supertiling derived from them.

Supertile halves are rebuilt from the substitution lineage: the children of a
Robinson triangle determine the inflated parent exactly, so no separate
generation run is needed.  The supertiling is returned at unit scale (divided
by phi**level) so that the ordinary graph code applies to it.
"""
from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field

from .golden import CycloPoint, GoldenNumber
from .graph import SiteGraph, build_graph, classify_all, edge_direction, GraphError
from .tiling import THICK, THIN, HalfRhomb, Tiling, TilingError

__all__ = [
    "SupertilingGraph",
    "RkttGraph",
    "build_supertiling",
    "supertile_halves",
    "derive_rktt",
    "FACE_TYPES",
]

FACE_TYPES = ("rhombus", "kite", "trapeze")


def _parent(kids: list[HalfRhomb]) -> HalfRhomb:
    """Inflated parent triangle of one substitution family (see tiling._subdivide)."""
    if len(kids) == 2:
        k0, k1 = kids
        return HalfRhomb(THIN, k1.c, k0.c, k0.apex)
    if len(kids) == 3:
        k0, k1 = kids[0], kids[1]
        return HalfRhomb(THICK, k0.c, k1.c, k0.b)
    raise TilingError(f"a substitution family has 2 or 3 members, got {len(kids)}")


def supertile_halves(t: Tiling, level: int = 4) -> tuple[list[HalfRhomb], list[int]]:
    """Level-``level`` supertile halves in the coordinates of ``t``.

    Returns the halves and, for every half of ``t``, the index of the supertile
    half that contains it.
    """
    if level > len(t.lineage):
        raise TilingError(
            f"supertiles of level {level} need {level} substitution steps of lineage, "
            f"tiling has {len(t.lineage)}"
        )
    halves = list(t.halves)
    owner = list(range(len(halves)))
    for g in range(level):
        parents = t.lineage[len(t.lineage) - 1 - g]
        fam: dict[int, list[int]] = defaultdict(list)
        for i, p in enumerate(parents):
            fam[p].append(i)
        n_par = max(parents) + 1 if parents else 0
        if sorted(fam) != list(range(n_par)):
            raise TilingError("lineage has a parent without children")
        halves = [_parent([halves[i] for i in fam[p]]) for p in range(n_par)]
        owner = [parents[o] for o in owner]
    return halves, owner


def _shrink(p: CycloPoint, level: int) -> CycloPoint:
    return p.mul_golden(GoldenNumber.phi_power(-level))


def _grow(p: CycloPoint, level: int) -> CycloPoint:
    for _ in range(level):
        p = p.mul_phi()
    return p


@dataclass
class SupertilingGraph:
    """Supertiling as a unit-scale site graph plus its map back to the tiling.

    ``back_map[i]`` is the id in ``base`` of super vertex ``i`` (after scaling
    by phi**level), or None when that point is not a vertex of ``base``.
    """

    tiling: Tiling
    graph: SiteGraph
    labels: list[str]
    back_map: list[int | None]
    level: int
    tile_owner: list[int] = field(repr=False, default_factory=list)

    def super_of(self) -> dict[int, int]:
        """Original vertex id -> super vertex id."""
        return {o: i for i, o in enumerate(self.back_map) if o is not None}


def build_supertiling(t: Tiling, base: SiteGraph, level: int = 4) -> SupertilingGraph:
    halves, owner = supertile_halves(t, level)
    small = [HalfRhomb(h.kind, *(_shrink(v, level) for v in h.vertices)) for h in halves]
    st = Tiling(halves=small, scale_exponent=t.scale_exponent - level, seed_kind=t.seed_kind)
    sg = build_graph(st)
    labels = classify_all(sg, st)
    back = [base.index.get(_grow(p, level)) for p in sg.points]
    return SupertilingGraph(st, sg, labels, back, level, owner)


@dataclass
class RkttGraph:
    """Planar graph of the RKTT supertiling, at the scale of the supertiling.

    ``faces`` lists complete faces as (type, vertex cycle); ``stars`` gives the
    face-type census around every vertex whose faces are all complete.
    """

    sg: SupertilingGraph
    vertices: list[int]
    edges: set
    faces: list[tuple[str, tuple[int, ...]]]
    stars: dict[int, Counter]
    incomplete_faces: int = 0


def _direction(p: CycloPoint, q: CycloPoint) -> tuple[int, int]:
    """(direction, length code) of segment p->q; length code 1 or 2 (for phi)."""
    d = q - p
    try:
        return edge_direction(CycloPoint(), d), 1
    except GraphError:
        pass
    return edge_direction(CycloPoint(), d.mul_golden(GoldenNumber(-1, 1))), 2


def _face_type(lengths: list[int], turns: list[int]) -> str | None:
    if len(lengths) != 4:
        return None
    if lengths.count(2) == 0:
        return "rhombus"
    if lengths.count(2) == 1:
        return "trapeze"
    if lengths.count(2) == 2:
        i = lengths.index(2)
        if lengths[(i + 1) % 4] == 2 or lengths[(i - 1) % 4] == 2:
            return "kite"
    return None


def derive_rktt(sg: SupertilingGraph) -> RkttGraph:
    """Delete kite-type super vertices and rebuild the faces.

    At a kite centre K the two edges shared with the thin rhombus are dropped
    and the edge shared by the two thick rhombi is extended through K along the
    thin rhombus' short diagonal to its other obtuse corner.
    """
    g, t, labels = sg.graph, sg.tiling, sg.labels
    edges = {frozenset(e) for e in g.edges}
    removed = set()
    for v in range(g.n):
        if labels[v] != "kite":
            continue
        thin = [(ri, pos) for _, ang, ri, pos in g.corners[v] if ang == 4]
        if len(thin) != 1:
            raise GraphError(f"kite vertex {v} without a single thin obtuse corner")
        ri, pos = thin[0]
        rv = [g.index[p] for p in t.rhombi[ri].vertices]
        far = rv[(pos + 2) % 4]
        thin_nb = {rv[(pos + 1) % 4], rv[(pos - 1) % 4]}
        other = [w for w in g.adjacency[v] if w not in thin_nb]
        if len(other) != 1:
            raise GraphError(f"kite vertex {v} has {len(other)} thick-thick edges")
        for w in g.adjacency[v]:
            edges.discard(frozenset((v, w)))
        edges.add(frozenset((other[0], far)))
        removed.add(v)
    verts = sorted(set(range(g.n)) - removed)

    out: dict[int, list[tuple[int, int, int]]] = defaultdict(list)
    for e in edges:
        a, b = tuple(e)
        for u, w in ((a, b), (b, a)):
            d, ln = _direction(g.points[u], g.points[w])
            out[u].append((d, w, ln))
    for u in out:
        out[u].sort()
        dirs = [d for d, _, _ in out[u]]
        if len(set(dirs)) != len(dirs):
            raise GraphError(f"overlapping RKTT edges at vertex {u}")

    # left-face traversal: arrive at w from u, leave by the next edge clockwise
    # from the reverse direction
    def next_dart(u, w):
        back = _direction(g.points[w], g.points[u])[0]
        cand = out[w]
        best = None
        for d, x, ln in cand:
            turn = (back - d) % 10
            if turn == 0:
                continue
            if best is None or turn < best[0]:
                best = (turn, x, ln)
        return best

    seen = set()
    faces = []
    bad = 0
    complete = [lab != "incomplete" for lab in labels]
    for u in verts:
        for d, w, ln in out[u]:
            if (u, w) in seen:
                continue
            cyc, lens, turns = [u], [ln], []
            a, b = u, w
            seen.add((a, b))
            ok = True
            while True:
                nx_ = next_dart(a, b)
                if nx_ is None:
                    ok = False
                    break
                turn, c, l2 = nx_
                turns.append(turn)
                if b == u and c == w:
                    break
                if (b, c) in seen:
                    ok = False
                    break
                seen.add((b, c))
                cyc.append(b)
                lens.append(l2)
                a, b = b, c
                if len(cyc) > 12:
                    ok = False
                    break
            if not ok or len(cyc) > 6:
                bad += 1
                continue
            ftype = _face_type(lens, turns)
            if not all(complete[x] for x in cyc) or ftype is None:
                bad += 1
                continue
            faces.append((ftype, tuple(cyc)))

    around: dict[int, Counter] = defaultdict(Counter)
    for ftype, cyc in faces:
        for x in cyc:
            around[x][ftype] += 1
    # a star is complete when its faces close up around the vertex
    stars = {}
    for v in verts:
        if v not in around or not complete[v]:
            continue
        if sum(around[v].values()) == len(out[v]):
            stars[v] = around[v]
    return RkttGraph(sg, verts, edges, faces, stars, bad)
