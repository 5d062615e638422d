"""P3 rhombus tilings generated by Robinson-triangle substitution.

Every rhombus is stored as its two halves (Robinson triangles) split along a
diagonal.  A thin half is the 36-72-72 triangle, a thick half the 108-36-36
triangle; in both cases the apex comes first and the last two vertices span the
split diagonal, so two halves with the same diagonal form one rhombus.

Substitution inflates the patch by phi instead of shrinking the tiles, so
edges keep unit length and all coordinates stay in Z[zeta_5].
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from .golden import CycloPoint

__all__ = [
    "THIN",
    "THICK",
    "SEED_KINDS",
    "HalfRhomb",
    "Rhombus",
    "Tiling",
    "make_seed",
    "substitute",
    "census",
    "supertile_partition",
    "tiling_to_json",
    "tiling_from_json",
    "TilingError",
]

THIN = 0
THICK = 1
KIND_NAMES = ("thin", "thick")
SEED_KINDS = ("one-thick", "one-thin", "sun")


class TilingError(ValueError):
    pass


@dataclass(frozen=True)
class HalfRhomb:
    kind: int
    apex: CycloPoint
    b: CycloPoint
    c: CycloPoint

    @property
    def vertices(self) -> tuple[CycloPoint, CycloPoint, CycloPoint]:
        return (self.apex, self.b, self.c)

    @property
    def diagonal(self) -> frozenset:
        return frozenset((self.b, self.c))

    @property
    def chirality(self) -> int:
        """+1 for counter-clockwise (apex, b, c), -1 for clockwise."""
        ax, ay = self.apex.to_cartesian()
        bx, by = self.b.to_cartesian()
        cx, cy = self.c.to_cartesian()
        cross = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
        return 1 if cross > 0 else -1


@dataclass(frozen=True)
class Rhombus:
    kind: int
    vertices: tuple  # cyclic order: apex1, b, apex2, c
    halves: tuple[int, int]

    def edges(self):
        v = self.vertices
        return [(v[i], v[(i + 1) % 4]) for i in range(4)]


def _subdivide(h: HalfRhomb) -> list[HalfRhomb]:
    a, b, c = h.apex, h.b, h.c
    A, B, C = a.mul_phi(), b.mul_phi(), c.mul_phi()
    if h.kind == THIN:
        p = A + (b - a)
        return [HalfRhomb(THIN, C, p, B), HalfRhomb(THICK, p, C, A)]
    q = B + (a - b)
    r = B + (c - b)
    return [
        HalfRhomb(THICK, r, C, A),
        HalfRhomb(THICK, q, r, B),
        HalfRhomb(THIN, r, q, A),
    ]


@dataclass
class Tiling:
    """A patch of a P3 tiling.

    ``halves`` is the current generation.  ``lineage[g]`` maps the index of a
    half in generation ``g + 1`` to its parent in generation ``g``; the last
    entry describes ``halves`` itself.
    """

    halves: list[HalfRhomb]
    scale_exponent: int = 0
    seed_kind: str = "custom"
    lineage: list[list[int]] = field(default_factory=list)

    _rhombi: list[Rhombus] | None = field(default=None, repr=False, compare=False)

    @property
    def rhombi(self) -> list[Rhombus]:
        """Complete rhombi: pairs of halves sharing their split diagonal."""
        if self._rhombi is None:
            self._rhombi = _pair_halves(self.halves)
        return self._rhombi

    def census(self) -> tuple:
        return census(self)

    def ancestor(self, index: int, levels: int) -> int:
        """Index of the ancestor ``levels`` generations up."""
        if levels > len(self.lineage):
            raise TilingError(
                f"lineage depth {len(self.lineage)} is smaller than requested level {levels}"
            )
        for g in range(levels):
            index = self.lineage[len(self.lineage) - 1 - g][index]
        return index


def _pair_halves(halves: list[HalfRhomb]) -> list[Rhombus]:
    by_diag: dict = {}
    for i, h in enumerate(halves):
        by_diag.setdefault((h.kind, h.diagonal), []).append(i)
    rhombi = []
    for (kind, _), idx in by_diag.items():
        if len(idx) > 2:
            raise TilingError("more than two halves share one diagonal")
        if len(idx) != 2:
            continue
        i, j = sorted(idx)
        h1, h2 = halves[i], halves[j]
        if h1.b != h2.b or h1.chirality == h2.chirality:
            raise TilingError("paired halves do not mirror each other across their diagonal")
        rhombi.append(Rhombus(kind, (h1.apex, h1.b, h2.apex, h1.c), (i, j)))
    rhombi.sort(key=lambda r: r.halves)
    return rhombi


def make_seed(kind: str = "sun") -> Tiling:
    """Seed patch: one thick rhombus, one thin rhombus, or five thick rhombi about the origin."""
    o = CycloPoint()
    e = CycloPoint.unit
    if kind == "one-thick":
        tip = e(-1) + e(1)
        halves = [HalfRhomb(THICK, e(-1), o, tip), HalfRhomb(THICK, e(1), o, tip)]
    elif kind == "one-thin":
        far = e(0) + e(1)
        halves = [HalfRhomb(THIN, o, e(0), e(1)), HalfRhomb(THIN, far, e(0), e(1))]
    elif kind == "sun":
        halves = []
        for i in range(5):
            tip = e(2 * i - 1) + e(2 * i + 1)
            halves.append(HalfRhomb(THICK, e(2 * i - 1), tip, o))
            halves.append(HalfRhomb(THICK, e(2 * i + 1), tip, o))
    else:
        raise ValueError(f"unknown seed kind {kind!r}; expected one of {SEED_KINDS}")
    return Tiling(halves=halves, scale_exponent=0, seed_kind=kind)


def substitute(t: Tiling, steps: int = 1) -> Tiling:
    if steps < 0:
        raise ValueError("steps must be non-negative")
    halves = t.halves
    lineage = list(t.lineage)
    for _ in range(steps):
        children: list[HalfRhomb] = []
        parents: list[int] = []
        for i, h in enumerate(halves):
            kids = _subdivide(h)
            children.extend(kids)
            parents.extend([i] * len(kids))
        halves = children
        lineage.append(parents)
    if steps == 0:
        return t
    return Tiling(
        halves=halves,
        scale_exponent=t.scale_exponent + steps,
        seed_kind=t.seed_kind,
        lineage=lineage,
    )


def census(t: Tiling) -> tuple:
    """(thin, thick) tile count with each half counted as 1/2."""
    from fractions import Fraction

    n_thin = sum(1 for h in t.halves if h.kind == THIN)
    n_thick = len(t.halves) - n_thin
    out = (Fraction(n_thin, 2), Fraction(n_thick, 2))
    return tuple(int(x) if x.denominator == 1 else x for x in out)


def supertile_partition(t: Tiling, level: int) -> dict[int, int]:
    """Map each half to the index of its level-``level`` ancestor.

    Ancestors are indexed in generation ``scale_exponent - level``.
    """
    if level < 0:
        raise ValueError("level must be non-negative")
    if level > len(t.lineage):
        raise TilingError(
            f"tiling carries {len(t.lineage)} levels of lineage; level {level} requested"
        )
    return {i: t.ancestor(i, level) for i in range(len(t.halves))}


def tiling_to_json(t: Tiling) -> str:
    verts: dict[CycloPoint, int] = {}
    for h in t.halves:
        for v in h.vertices:
            verts.setdefault(v, len(verts))
    doc = {
        "format": "p3-tiling/1",
        "seed_kind": t.seed_kind,
        "scale_exponent": t.scale_exponent,
        "vertices": [list(v.coeffs) for v in verts],
        "halves": [
            {"kind": KIND_NAMES[h.kind], "vertices": [verts[v] for v in h.vertices]}
            for h in t.halves
        ],
        "rhombi": [
            {"kind": KIND_NAMES[r.kind], "vertices": [verts[v] for v in r.vertices], "halves": list(r.halves)}
            for r in t.rhombi
        ],
        "lineage": t.lineage,
    }
    return json.dumps(doc, separators=(",", ":"))


def tiling_from_json(text: str) -> Tiling:
    doc = json.loads(text)
    if doc.get("format") != "p3-tiling/1":
        raise TilingError("not a p3-tiling/1 document")
    verts = [CycloPoint(*v) for v in doc["vertices"]]
    halves = [
        HalfRhomb(KIND_NAMES.index(h["kind"]), *(verts[i] for i in h["vertices"]))
        for h in doc["halves"]
    ]
    return Tiling(
        halves=halves,
        scale_exponent=doc["scale_exponent"],
        seed_kind=doc["seed_kind"],
        lineage=[list(p) for p in doc["lineage"]],
    )
