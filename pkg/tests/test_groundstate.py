import math
from fractions import Fraction

import pytest

from p3hardcore.golden import GoldenNumber
from p3hardcore.groundstate import (
    DENSITY_TERMS,
    Configuration,
    ConfigurationError,
    configuration_from_json,
    configuration_to_json,
    exact_density,
    mis_configuration,
    sublattice,
    urchin_flip,
    window_density,
    yellow_edges,
    yellow_loops,
)

DENSITY = (57 - 25 * math.sqrt(5)) / 2


def test_exact_density():
    d = exact_density()
    assert d == GoldenNumber(41, -25)
    assert float(d) == pytest.approx(0.549150, abs=1e-6)
    assert float(d) == pytest.approx(DENSITY, abs=1e-12)


def test_centre_frequencies_sum_to_non_kite_fraction():
    freqs = sum((f for _, _, f in DENSITY_TERMS), GoldenNumber(0))
    assert 0 < float(freqs) < 1


def test_ground_state_admissible(sun8):
    c, g = sun8.ground, sun8.graph
    assert c.is_admissible(g.adjacency)
    assert c.count == sum(len(p.perfect) for p in sun8.partition.full_instances())


def test_window_density_close(sun8):
    d = window_density(sun8.ground, sun8.window)
    assert abs(float(d) - DENSITY) < 0.005


def test_mis_matches_ground_state_count_on_window(sun8):
    m = mis_configuration(sun8.graph)
    assert m.is_admissible(sun8.graph.adjacency)
    w = sun8.window
    assert len(m.occupied & w) == len(sun8.ground.occupied & w)


def test_yellow_edges_are_vacant(sun8):
    c = sun8.ground
    for u, w in yellow_edges(c, sun8.graph):
        assert u not in c.occupied and w not in c.occupied


def test_yellow_components_are_domain_walls(sun8):
    c, g = sun8.ground, sun8.graph
    win = sun8.window
    inner = {v for v in win if all(w in win for w in g.adjacency[v])}
    walls = 0
    for comp in yellow_loops(c.restrict(win), g):
        if not set(comp.vertices) <= inner:
            continue
        parities = {int(g.parity[w]) for v in comp.vertices for w in g.adjacency[v] if w in c.occupied}
        assert parities == {0, 1}
        walls += 1
    assert walls > 0
    assert {int(g.parity[v]) for v in c.occupied & win} == {0, 1}


def test_configuration_checks():
    adj = [[1], [0, 2], [1]]
    Configuration(frozenset({0, 2}), frozenset(range(3))).check(adj)
    with pytest.raises(ConfigurationError):
        Configuration(frozenset({0, 1}), frozenset(range(3))).check(adj)
    c = Configuration.from_mask([True, False, True])
    assert c.count == 2 and list(c.mask(3)) == [True, False, True]


def test_window_density_errors():
    c = Configuration(frozenset({0}), frozenset({0, 1}))
    assert window_density(c, {0, 1}) == Fraction(1, 2)
    with pytest.raises(ConfigurationError):
        window_density(c, set())
    with pytest.raises(ConfigurationError):
        window_density(c, {0, 5})


def test_json_round_trip(sun8):
    text = configuration_to_json(sun8.ground, "sun_8")
    assert configuration_from_json(text) == sun8.ground
    with pytest.raises(ConfigurationError):
        configuration_from_json('{"format": "x"}')


def test_urchin_flip_k8(sun8):
    g = sun8.graph
    dom = frozenset(range(g.n))
    base = sublattice(g, 0, dom)
    out, flipped = urchin_flip(base, g)
    assert flipped
    assert out.count == base.count + len(flipped)
    assert out.is_admissible(g.adjacency)
