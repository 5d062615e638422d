import json

import numpy as np
import pytest

from p3hardcore.golden import CycloPoint
from p3hardcore.groundstate import mis_configuration
from p3hardcore.patterns import (
    PATTERN_KINDS,
    PATTERN_OF_LABEL,
    PERFECT_COUNT,
    PatternError,
    Partitioner,
    extract_templates,
    load_templates,
    map_star_to_pattern,
    partition_to_json,
    templates_from_json,
    templates_to_json,
)
from p3hardcore.tiling import make_seed, substitute

SIZES = {"urchin": 31, "starfish": 96, "snail": 42, "turtle": 115, "bat": 134}


def test_template_sizes_and_counts():
    tmpl = load_templates()
    assert set(tmpl) == set(PATTERN_OF_LABEL)
    for lab, t in tmpl.items():
        assert t.kind == PATTERN_OF_LABEL[lab]
        assert t.count == PERFECT_COUNT[t.kind]
        assert t.size == SIZES[t.kind]
        assert t.center_index in t.perfect()
        adj = t.adjacency()
        assert all(not (adj[v] & t.perfect()) for v in t.perfect())


def test_five_fold_templates_are_symmetric():
    tmpl = load_templates()
    for lab in ("sun", "star"):
        t = tmpl[lab]
        cells = {c: o for c, o in t.cells}
        rot = CycloPoint.unit(2)
        for c, o in t.cells:
            assert cells[tuple(CycloPoint(*c) * rot)] == o


def test_templates_json_round_trip():
    tmpl = load_templates()
    text = templates_to_json(tmpl)
    assert templates_from_json(text) == tmpl
    with pytest.raises(PatternError):
        templates_from_json(json.dumps({"format": "other"}))


def test_map_star_to_pattern():
    assert map_star_to_pattern({"kite": 5}) == "starfish"
    assert map_star_to_pattern({"rhombus": 2, "trapeze": 2}) == "urchin"
    assert map_star_to_pattern({"rhombus": 1, "kite": 2, "trapeze": 2, "other": 0}) == "bat"
    with pytest.raises(PatternError):
        map_star_to_pattern({"kite": 4})


def test_partition_k8(sun8):
    part = sun8.partition
    assert part.is_partition
    assert set(part.kind_census()) == set(PATTERN_KINDS)
    for p in part.full_instances():
        assert len(p.perfect) == PERFECT_COUNT[p.kind]
        assert p.center in p.perfect and p.perfect <= p.interior
        assert not (p.sm_boundary & p.interior)
    win = np.flatnonzero(part.window)
    assert (part.owner[win] >= 0).all()


def test_partition_agrees_with_maximum_independent_set(sun8):
    mis = mis_configuration(sun8.graph)
    win = sun8.window
    assert sun8.ground.occupied & win == mis.occupied & win


def test_partition_json(sun8):
    doc = json.loads(partition_to_json(sun8.partition))
    assert doc["format"] == "p3-partition/1"
    assert len(doc["patterns"]) == len(sun8.partition.instances)


def test_partitioner_estimator():
    t = substitute(make_seed("sun"), 7)
    est = Partitioner()
    assert est.get_params()["level"] == 4
    owner = est.fit(t).transform()
    assert owner.shape == (est.graph_.n,)
    assert est.partition_.is_partition
    with pytest.raises(ValueError):
        est.set_params(depth=3)


@pytest.mark.slow
def test_extract_templates_reproduces_shipped_data(sun10):
    occ = mis_configuration(sun10.graph).mask(sun10.graph.n)
    got = extract_templates(sun10.graph, sun10.supertiling, occ)
    assert got == load_templates()
