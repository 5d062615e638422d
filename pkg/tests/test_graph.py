from collections import Counter

import numpy as np
import pytest

from p3hardcore.graph import (
    ATLAS_LABELS,
    GraphError,
    atlas_census,
    bipartition,
    build_graph,
    classify_all,
    graph_to_json,
    star_sequence,
)
from p3hardcore.tiling import make_seed, substitute


def test_sun_seed_graph():
    t = make_seed("sun")
    g = build_graph(t)
    assert g.n == 11 and len(g.edges) == 15
    classify_all(g, t)
    centre = g.index[min(g.points, key=lambda p: abs(p.to_complex()))]
    assert g.degree(centre) == 5
    assert g.labels[centre] in ("sun", "star")
    assert sum(l != "incomplete" for l in g.labels) == 1


def test_single_rhombus():
    g = build_graph(make_seed("one-thin"))
    assert g.n == 4 and len(g.edges) == 4
    assert sorted(np.bincount(g.parity)) == [2, 2]


def test_bipartite_and_parity_proper(sun8):
    g = sun8.graph
    for u, w in g.edges:
        assert g.parity[u] != g.parity[w]


def test_odd_cycle_detected(sun8):
    g = sun8.graph
    u, w = g.edges[0]
    x = next(x for x in g.adjacency[w] if x != u)
    # close a triangle u-w-x
    g2 = type(g)(g.points, g.index, [list(a) for a in g.adjacency], g.parity.copy(), g.corners)
    g2.adjacency[u].append(x)
    g2.adjacency[x].append(u)
    with pytest.raises(GraphError):
        bipartition(g2)


def test_complete_degrees(sun8):
    g = sun8.graph
    degs = [g.degree(v) for v in range(g.n) if g.is_complete(v)]
    assert min(degs) >= 3 and max(degs) <= 7


def test_all_atlas_classes_at_k8(sun8):
    census = atlas_census(sun8.graph.labels)
    assert set(census) == set(ATLAS_LABELS) - {"incomplete"}


def test_star_sequences_close(sun8):
    g = sun8.graph
    for v in range(g.n):
        seq = star_sequence(g, v)
        if seq is not None:
            assert sum(seq) == 10


def test_ids_do_not_depend_on_rhombus_order():
    t = substitute(make_seed("sun"), 3)
    g1 = build_graph(t)
    t.halves.reverse()
    t._rhombi = None
    g2 = build_graph(t)
    assert g1.points == g2.points and g1.edges == g2.edges


def test_json_schema():
    import json

    t = substitute(make_seed("sun"), 2)
    g = build_graph(t)
    classify_all(g, t)
    doc = json.loads(graph_to_json(g))
    assert doc["format"] == "p3-graph/1"
    assert len(doc["vertices"]) == g.n and len(doc["edges"]) == len(g.edges)
    assert Counter(v["parity"] for v in doc["vertices"]).keys() <= {"even", "odd"}
