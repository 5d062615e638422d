import numpy as np
import pytest

from p3hardcore.tiling import (
    SEED_KINDS,
    THICK,
    THIN,
    TilingError,
    census,
    make_seed,
    substitute,
    supertile_partition,
    tiling_from_json,
    tiling_to_json,
)

M = np.array([[1, 1], [1, 2]], dtype=object)  # columns: thin, thick rhombus images


def predicted(seed, k):
    start = {"one-thin": (1, 0), "one-thick": (0, 1), "sun": (0, 5)}[seed]
    return tuple(int(x) for x in np.linalg.matrix_power(M, k).dot(np.array(start, dtype=object)))


def test_seeds():
    assert census(make_seed("one-thick")) == (0, 1)
    assert census(make_seed("one-thin")) == (1, 0)
    assert census(make_seed("sun")) == (0, 5)
    assert len(make_seed("sun").rhombi) == 5
    with pytest.raises((TilingError, ValueError)):
        make_seed("moon")


@pytest.mark.parametrize("seed", SEED_KINDS)
def test_census_matches_matrix_power(seed):
    t = make_seed(seed)
    for k in range(9):
        assert census(t) == predicted(seed, k), (seed, k)
        t = substitute(t)


def test_substitute_zero_is_identity():
    t = make_seed("sun")
    assert substitute(t, 0) is t
    with pytest.raises(ValueError):
        substitute(t, -1)


@pytest.mark.parametrize("kind,expected", [("one-thin", (13, 21)), ("one-thick", (21, 34))])
def test_level4_supertile_content(kind, expected):
    t = substitute(make_seed(kind), 4)
    assert census(t) == expected
    owner = supertile_partition(t, 4)
    assert set(owner.values()) == set(range(len(make_seed(kind).halves)))


def test_supertile_partition_groups_by_ancestor():
    t = substitute(make_seed("sun"), 6)
    owner = supertile_partition(t, 4)
    groups = {}
    for i, a in owner.items():
        h = t.halves[i]
        groups.setdefault(a, [0, 0])[h.kind] += 1
    parent = substitute(make_seed("sun"), 2)
    for a, (thin, thick) in groups.items():
        exp = (13, 21) if parent.halves[a].kind == THIN else (21, 34)
        # a half-rhombus expands to the same numbers of halves as a rhombus does of rhombi
        assert (thin, thick) == exp
    with pytest.raises(TilingError):
        supertile_partition(t, 7)


def test_edges_are_unit_and_rhombi_exact():
    t = substitute(make_seed("sun"), 3)
    for r in t.rhombi:
        vs = r.vertices
        for i in range(4):
            assert vs[i] != vs[(i + 1) % 4]
            assert float((vs[(i + 1) % 4] - vs[i]).abs2()) == pytest.approx(1.0)
    assert {r.kind for r in t.rhombi} <= {THIN, THICK}


def test_json_round_trip():
    t = substitute(make_seed("one-thin"), 4)
    text = tiling_to_json(t)
    u = tiling_from_json(text)
    assert tiling_to_json(u) == text
    assert census(u) == census(t)
