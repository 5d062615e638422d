from collections import Counter

import pytest

from p3hardcore.golden import GoldenNumber
from p3hardcore.graph import build_graph
from p3hardcore.patterns import PATTERN_OF_LABEL, map_star_to_pattern
from p3hardcore.supertiling import FACE_TYPES, build_supertiling, derive_rktt, supertile_halves
from p3hardcore.tiling import TilingError, census, make_seed, substitute


def test_supertiles_reproduce_the_coarser_tiling():
    t = substitute(make_seed("sun"), 6)
    halves, owner = supertile_halves(t, 4)
    coarse = substitute(make_seed("sun"), 2)
    phi4 = GoldenNumber.phi_power(4)
    scaled = {(h.kind, tuple(v.mul_golden(phi4) for v in h.vertices)) for h in coarse.halves}
    assert {(h.kind, h.vertices) for h in halves} == scaled
    assert len(owner) == len(t.halves)


def test_supertiling_at_unit_scale(sun8):
    sg = sun8.supertiling
    assert census(sg.tiling) == census(substitute(make_seed("sun"), 4))
    # every super vertex is a vertex of the original tiling
    assert all(b is not None for b in sg.back_map)


def test_lineage_required():
    with pytest.raises(TilingError):
        supertile_halves(make_seed("sun"), 1)


def test_level_zero_is_the_tiling_itself():
    t = substitute(make_seed("sun"), 3)
    g = build_graph(t)
    sg = build_supertiling(t, g, level=0)
    assert sg.graph.n == g.n and sg.back_map == list(range(g.n))


def test_rktt_faces(sun8):
    rk = derive_rktt(sun8.supertiling)
    sg = rk.sg
    assert not any(sg.labels[v] == "kite" for v in rk.vertices)
    types = Counter(f for f, _ in rk.faces)
    assert set(types) <= set(FACE_TYPES)
    for ftype, cyc in rk.faces:
        assert len(cyc) == (4 if ftype in ("rhombus", "kite", "trapeze") else 0)


def test_rktt_stars_for_five_fold_and_king(sun8):
    rk = derive_rktt(sun8.supertiling)
    labels = rk.sg.labels
    seen = set()
    for v, c in rk.stars.items():
        if labels[v] in ("sun", "king", "queen"):
            assert map_star_to_pattern(c) == PATTERN_OF_LABEL[labels[v]]
            seen.add(labels[v])
    assert seen == {"sun", "king", "queen"}
