"""SVG output for tilings, ground states and supertiling overlays.

Documents are assembled as text with fixed number formatting so that equal
inputs give byte-identical files.  Every drawn object carries a class name
(``rhombus``, ``particle``, ``yellow``, ``super-edge``, ``rktt-edge``) so the
element counts can be checked against the combinatorics.
"""
from __future__ import annotations

from dataclasses import dataclass, fields, replace

from .tiling import THIN, Tiling

__all__ = [
    "RenderStyle",
    "render_tiling",
    "render_ground_state",
    "render_overlay",
    "svg_filename",
    "parse_style",
]


@dataclass(frozen=True)
class RenderStyle:
    even: str = "#1f4fd6"
    odd: str = "#d62f1f"
    yellow: str = "#f2c200"
    edge: str = "#555555"
    thin_fill: str = "#e8e8e8"
    thick_fill: str = "#c8c8c8"
    underlay: str = "#bbbbbb"
    supertiling: str = "#1f4fd6"
    rktt: str = "#d62f1f"
    light_gray: str = "#dddddd"
    dot_radius: float = 0.18
    stroke: float = 0.04
    yellow_stroke: float = 0.12
    layer_stroke: float = 0.14
    scale: float = 20.0
    margin: float = 2.0


def parse_style(pairs, base: RenderStyle | None = None) -> RenderStyle:
    """Apply KEY=VALUE overrides; numeric fields are converted."""
    base = base or RenderStyle()
    kinds = {f.name: f.type for f in fields(RenderStyle)}
    upd = {}
    for item in pairs or ():
        if "=" not in item:
            raise ValueError(f"style override {item!r} is not KEY=VALUE")
        k, v = item.split("=", 1)
        if k not in kinds:
            raise ValueError(f"unknown style key {k!r}")
        upd[k] = float(v) if kinds[k] in ("float", float) else v
    return replace(base, **upd)


def _f(x: float) -> str:
    s = f"{x:.3f}"
    return "0.000" if s == "-0.000" else s


class _Canvas:
    def __init__(self, points, style: RenderStyle):
        self.style = style
        xs = [p[0] for p in points] or [0.0]
        ys = [p[1] for p in points] or [0.0]
        m = style.margin
        self.x0, self.y1 = min(xs) - m, max(ys) + m
        self.w = (max(xs) - min(xs) + 2 * m) * style.scale
        self.h = (max(ys) - min(ys) + 2 * m) * style.scale
        self.parts: list[str] = []

    def xy(self, p):
        s = self.style.scale
        return (p[0] - self.x0) * s, (self.y1 - p[1]) * s

    def polygon(self, pts, cls, fill, stroke=None):
        coords = " ".join(f"{_f(x)},{_f(y)}" for x, y in (self.xy(p) for p in pts))
        st = stroke or self.style.edge
        self.parts.append(
            f'<polygon class="{cls}" points="{coords}" fill="{fill}" stroke="{st}" '
            f'stroke-width="{_f(self.style.stroke * self.style.scale)}"/>'
        )

    def line(self, a, b, cls, colour, width):
        (x1, y1), (x2, y2) = self.xy(a), self.xy(b)
        self.parts.append(
            f'<line class="{cls}" x1="{_f(x1)}" y1="{_f(y1)}" x2="{_f(x2)}" y2="{_f(y2)}" '
            f'stroke="{colour}" stroke-width="{_f(width * self.style.scale)}" stroke-linecap="round"/>'
        )

    def dot(self, p, cls, colour):
        x, y = self.xy(p)
        self.parts.append(
            f'<circle class="{cls}" cx="{_f(x)}" cy="{_f(y)}" '
            f'r="{_f(self.style.dot_radius * self.style.scale)}" fill="{colour}"/>'
        )

    def group(self, name):
        self.parts.append(f'<g id="{name}">')

    def end(self):
        self.parts.append("</g>")

    def document(self) -> str:
        head = (
            '<?xml version="1.0" encoding="UTF-8"?>\n'
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
            f'width="{_f(self.w)}" height="{_f(self.h)}" viewBox="0 0 {_f(self.w)} {_f(self.h)}">\n'
        )
        return head + "\n".join(self.parts) + "\n</svg>\n"


def _tiling_points(t: Tiling):
    return [v.to_cartesian() for r in t.rhombi for v in r.vertices]


def _draw_rhombi(cv: _Canvas, t: Tiling, plain=False):
    st = cv.style
    cv.group("tiling")
    for r in t.rhombi:
        kind = "thin" if r.kind == THIN else "thick"
        fill = "none" if plain else (st.thin_fill if r.kind == THIN else st.thick_fill)
        stroke = st.underlay if plain else None
        cv.polygon([v.to_cartesian() for v in r.vertices], f"rhombus {kind}", fill, stroke)
    cv.end()


def render_tiling(t: Tiling, style: RenderStyle | None = None) -> str:
    """One polygon per complete rhombus."""
    style = style or RenderStyle()
    cv = _Canvas(_tiling_points(t), style)
    _draw_rhombi(cv, t)
    return cv.document()


def render_ground_state(t: Tiling, g, c, style: RenderStyle | None = None) -> str:
    """Grey tiling, yellow vacant edges, blue (even) and red (odd) particles."""
    from .groundstate import yellow_edges

    style = style or RenderStyle()
    cv = _Canvas(_tiling_points(t), style)
    _draw_rhombi(cv, t, plain=True)
    cv.group("yellow")
    for u, w in yellow_edges(c, g):
        cv.line(g.points[u].to_cartesian(), g.points[w].to_cartesian(), "yellow", style.yellow, style.yellow_stroke)
    cv.end()
    cv.group("particles")
    for v in sorted(c.occupied):
        par = g.parity[v]
        if par not in (0, 1):
            raise ValueError(f"occupied vertex {v} has no parity")
        cls, col = ("particle even", style.even) if par == 0 else ("particle odd", style.odd)
        cv.dot(g.points[v].to_cartesian(), cls, col)
    cv.end()
    return cv.document()


def render_overlay(t: Tiling, layers: dict | None = None, style: RenderStyle | None = None) -> str:
    """Tiling underlay with optional ``supertiling``, ``rktt`` and ``partition`` layers.

    ``supertiling`` is a SupertilingGraph, ``rktt`` an RkttGraph built on it
    (or on the level-0 graph), ``partition`` a Partition with its graph under
    ``graph``.  Red RKTT edges are drawn after, hence above, the blue ones.
    """
    from .supertiling import _grow

    layers = layers or {}
    style = style or RenderStyle()
    cv = _Canvas(_tiling_points(t), style)
    _draw_rhombi(cv, t, plain=bool(layers))
    sg = layers.get("supertiling")
    if sg is not None:
        cv.group("supertiling")
        for u, w in sg.graph.edges:
            a = _grow(sg.graph.points[u], sg.level).to_cartesian()
            b = _grow(sg.graph.points[w], sg.level).to_cartesian()
            cv.line(a, b, "super-edge", style.supertiling, style.layer_stroke)
        cv.end()
    rk = layers.get("rktt")
    if rk is not None:
        base = rk.sg
        kept = {frozenset(e) for e in base.graph.edges}
        cv.group("rktt")
        # edges of the source graph that the RKTT drops are shown light grey
        for e in sorted(tuple(sorted(x)) for x in kept - rk.edges):
            a = _grow(base.graph.points[e[0]], base.level).to_cartesian()
            b = _grow(base.graph.points[e[1]], base.level).to_cartesian()
            cv.line(a, b, "dropped-edge", style.light_gray, style.layer_stroke)
        for e in sorted(tuple(sorted(x)) for x in rk.edges):
            a = _grow(base.graph.points[e[0]], base.level).to_cartesian()
            b = _grow(base.graph.points[e[1]], base.level).to_cartesian()
            cv.line(a, b, "rktt-edge", style.rktt, style.layer_stroke)
        cv.end()
    part = layers.get("partition")
    if part is not None:
        g = layers["graph"]
        cv.group("patterns")
        seen = set()
        for p in part.instances:
            for u, w in p.yellow_edges:
                e = (min(u, w), max(u, w))
                if e in seen:
                    continue
                seen.add(e)
                cv.line(g.points[u].to_cartesian(), g.points[w].to_cartesian(), "yellow", style.yellow,
                        style.yellow_stroke)
        cv.end()
    return cv.document()


def svg_filename(seed: str, k: int, layer: str) -> str:
    return f"{seed}_{k}_{layer}.svg"
