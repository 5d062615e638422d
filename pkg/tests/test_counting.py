import random
from fractions import Fraction

import pytest

from p3hardcore.counting import (
    CountingError,
    LoopDecomposition,
    brute_force_mis,
    build_loops,
    cycle_brute_force,
    loop_decomposition_check,
    loop_partition_function,
    loop_partition_polynomial,
    max_independent_set,
    thin_triple,
    verify_lemma1,
)
from p3hardcore.graph import build_graph
from p3hardcore.patterns import load_templates
from p3hardcore.tiling import make_seed, substitute


def cycle(n):
    return {i: {(i - 1) % n, (i + 1) % n} for i in range(n)}


def random_graph(rng, n, p):
    adj = {i: set() for i in range(n)}
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                adj[i].add(j)
                adj[j].add(i)
    return adj


@pytest.mark.parametrize("seed", range(12))
def test_mis_matches_brute_force(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 18)
    adj = random_graph(rng, n, rng.choice([0.1, 0.25, 0.5]))
    res = max_independent_set(adj)
    best, n_best = brute_force_mis(adj)
    assert res.best_count == best
    if n_best <= 64:
        assert len(res.best_configs) == n_best
    for s in res.best_configs:
        assert all(not (adj[v] & s) for v in s)


def test_mis_bipartite_grid():
    # 4x5 grid: alpha = 10, two maximizers (the colour classes)
    adj = {}
    for i in range(4):
        for j in range(5):
            adj[(i, j)] = {(i + a, j + b) for a, b in ((1, 0), (-1, 0), (0, 1), (0, -1))
                           if 0 <= i + a < 4 and 0 <= j + b < 5}
    res = max_independent_set(adj)
    assert res.best_count == 10 and not res.unique and res.second_best_count == 10


def test_mis_fixed_vertices():
    adj = cycle(6)
    res = max_independent_set(adj, fixed={0: 1, 1: 0})
    assert res.best_count == 3 and all(0 in s for s in res.best_configs)


def test_unique_maximizer_on_path():
    path = {0: {1}, 1: {0, 2}, 2: {1, 3}, 3: {2, 4}, 4: {3}}
    rep = verify_lemma1(path, {0, 2, 4}, 3)
    assert rep["passed"] and rep["best"] == 3 and rep["second_best"] == 2
    rep = verify_lemma1(cycle(6), {0, 2, 4}, 3)
    assert not rep["passed"] and rep["witness"] == [1, 3, 5]


def test_lemma1_on_templates():
    for lab in ("star", "sun", "ace"):
        t = load_templates()[lab]
        rep = verify_lemma1(t.adjacency(), t.perfect(), t.count)
        assert rep["passed"], rep


def test_loops_on_templates():
    for lab, t in load_templates().items():
        adj = t.adjacency()
        ld = build_loops(adj, t.perfect(), t.center_index)
        rep = loop_decomposition_check(adj, set(range(t.size)), t.perfect(), ld)
        assert rep["passed"], (lab, rep["problems"])
        assert all(len(l) % 2 == 0 for l in ld.loops)


def test_bat_loop_length():
    t = next(t for t in load_templates().values() if t.kind == "bat")
    ld = build_loops(t.adjacency(), t.perfect(), t.center_index)
    assert sum(len(l) for l in ld.loops) == 2 * (t.count - 1)


def test_odd_loop_rejected():
    adj = cycle(5)
    adj[5] = set()
    ld = LoopDecomposition([[0, 1, 2, 3, 4]], 5)
    rep = loop_decomposition_check(adj, set(range(6)), {0, 2}, ld)
    assert not rep["passed"] and rep["problems"][0][1] == "odd length"


def test_loop_check_catches_half_violation():
    adj = cycle(4)
    adj[4] = set()
    ld = LoopDecomposition([[0, 1, 2, 3]], 4)
    rep = loop_decomposition_check(adj, set(range(5)), {0}, ld)
    assert not rep["passed"]


def test_loop_polynomial_values():
    assert loop_partition_polynomial(2) == [1, 4, 2]
    assert loop_partition_function(2, 1) == 7
    assert loop_partition_function(3, 1) == 18
    with pytest.raises(ValueError):
        loop_partition_polynomial(0)


@pytest.mark.parametrize("m", range(2, 7))
def test_loop_function_equals_enumeration(m):
    rng = random.Random(m)
    for _ in range(20):
        u = Fraction(rng.randint(1, 500), rng.randint(1, 50))
        assert loop_partition_function(m, u) == cycle_brute_force(2 * m, u)


def test_cycle_brute_force_small():
    assert cycle_brute_force(3, 1) == 4
    assert cycle_brute_force(4, 2) == 1 + 4 * 2 + 2 * 4
    with pytest.raises(CountingError):
        cycle_brute_force(30, 1)


def test_thin_triple_same_parity():
    t = substitute(make_seed("sun"), 4)
    g = build_graph(t)
    tr = thin_triple(g, t)
    assert tr is not None
    assert len({int(g.parity[v]) for v in tr}) == 1
    assert thin_triple(build_graph(make_seed("one-thin")), make_seed("one-thin")) is None
