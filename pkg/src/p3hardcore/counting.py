"""Exact independent-set counting: branch-and-bound MIS, loop checks, cycle partition functions.

The MIS bound is alpha(G) <= n - nu(G) for any matching of size nu; on
bipartite graphs the maximum matching makes it exact (Koenig), so the search
below touches few nodes on the pattern graphs, which are all bipartite.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

import numpy as np
from scipy.optimize import Bounds, LinearConstraint, milp
from scipy.sparse import coo_matrix, csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

__all__ = [
    "MisResult",
    "LoopDecomposition",
    "CountingError",
    "max_independent_set",
    "brute_force_mis",
    "verify_lemma1",
    "build_loops",
    "loop_decomposition_check",
    "loop_partition_function",
    "loop_partition_polynomial",
    "cycle_brute_force",
    "thin_triple",
]


class CountingError(ValueError):
    pass


@dataclass
class MisResult:
    best_count: int
    best_configs: list[frozenset]
    second_best_count: int
    nodes: int = 0

    @property
    def unique(self) -> bool:
        return len(self.best_configs) == 1


def _two_colour(adj: dict[int, set[int]]):
    colour: dict[int, int] = {}
    for root in sorted(adj):
        if root in colour:
            continue
        colour[root] = 0
        stack = [root]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in colour:
                    colour[w] = 1 - colour[u]
                    stack.append(w)
                elif colour[w] == colour[u]:
                    return None
    return colour


def _matching_size(verts, adj, colour) -> int:
    if colour is None:
        # greedy maximal matching still bounds alpha from above
        used = set()
        size = 0
        for u in verts:
            if u in used:
                continue
            for w in adj[u]:
                if w in verts and w not in used and w != u:
                    used.update((u, w))
                    size += 1
                    break
        return size
    left = [v for v in verts if colour[v] == 0]
    right = [v for v in verts if colour[v] == 1]
    if not left or not right:
        return 0
    ri = {v: i for i, v in enumerate(right)}
    rows, cols = [], []
    for i, v in enumerate(left):
        for w in adj[v]:
            j = ri.get(w)
            if j is not None:
                rows.append(i)
                cols.append(j)
    if not rows:
        return 0
    m = csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(len(left), len(right)))
    match = maximum_bipartite_matching(m, perm_type="column")
    return int((match >= 0).sum())


def max_independent_set(adjacency: dict, fixed: dict | None = None, keep: int = 64) -> MisResult:
    """Exact maximum independent set of a small graph.

    ``adjacency`` maps vertex -> iterable of neighbours (induced subgraph).
    ``fixed`` pins vertices to 0 or 1.  All maximizers are returned (up to
    ``keep`` of them; the count stays exact) and the second-best count is the
    largest size of an admissible set that is not a maximizer.
    """
    adj = {v: set(nb) & set(adjacency) for v, nb in adjacency.items()}
    for v in adj:
        adj[v].discard(v)
    fixed = dict(fixed or {})
    for v, val in fixed.items():
        if v not in adj or val not in (0, 1):
            raise CountingError(f"bad fixed assignment {v}={val}")
    ones = {v for v, val in fixed.items() if val == 1}
    for v in ones:
        if adj[v] & ones:
            raise CountingError(f"fixed assignment occupies both ends of an edge at {v}")
    colour = _two_colour(adj)

    start = set(adj) - set(fixed)
    for v in ones:
        start -= adj[v]

    best = [-1]
    found: list[frozenset] = []
    n_best = [0]
    nodes = [0]

    def bound(free):
        return len(free) - _matching_size(free, adj, colour)

    def rec(chosen, free, target):
        nodes[0] += 1
        if len(chosen) + bound(free) < target:
            return
        if not free:
            size = len(chosen)
            if size > best[0]:
                best[0] = size
                found.clear()
                n_best[0] = 0
            if size == best[0]:
                n_best[0] += 1
                if len(found) < keep:
                    found.append(frozenset(chosen))
            return
        # branch on a highest-degree free vertex
        v = max(free, key=lambda x: (len(adj[x] & free), -x if isinstance(x, int) else 0))
        rec(chosen | {v}, free - adj[v] - {v}, max(target, best[0]))
        rec(chosen, free - {v}, max(target, best[0]))

    # exact optimum first, then enumerate all sets reaching it
    opt = len(ones) + bound(start) if colour is not None else None
    if opt is None:
        rec(frozenset(ones), frozenset(start), 0)
    else:
        best[0] = opt
        rec(frozenset(ones), frozenset(start), opt)
    best_count = best[0]
    n_max = n_best[0]
    if n_max > 1:
        second = best_count
    else:
        # removing one free chosen vertex from the unique maximizer gives best-1;
        # nothing between best-1 and best exists besides maximizers
        free_chosen = set(found[0]) - ones if found else set()
        second = best_count - 1 if free_chosen else -1
    return MisResult(best_count, found, second, nodes[0])


def brute_force_mis(adjacency: dict) -> tuple[int, int]:
    """(alpha, number of maximum independent sets) by exhaustive enumeration."""
    verts = sorted(adjacency)
    n = len(verts)
    if n > 25:
        raise CountingError("brute force limited to 25 vertices")
    pos = {v: i for i, v in enumerate(verts)}
    masks = [0] * n
    for v in verts:
        for w in adjacency[v]:
            if w in pos and w != v:
                masks[pos[v]] |= 1 << pos[w]
    best, count = 0, 0
    for s in range(1 << n):
        ok = True
        x = s
        while x:
            i = (x & -x).bit_length() - 1
            if masks[i] & s:
                ok = False
                break
            x &= x - 1
        if not ok:
            continue
        c = bin(s).count("1")
        if c > best:
            best, count = c, 1
        elif c == best:
            count += 1
    return best, count


def verify_lemma1(adjacency: dict, perfect: set, expected: int | None = None) -> dict:
    """Free-boundary check that ``perfect`` is the unique maximum by a margin of one."""
    res = max_independent_set(adjacency)
    perfect = frozenset(perfect)
    report = {
        "best": res.best_count,
        "second_best": res.second_best_count,
        "n_maximizers": len(res.best_configs),
        "unique": res.unique,
        "perfect_count": len(perfect),
        "perfect_is_maximizer": perfect in res.best_configs,
    }
    ok = res.unique and report["perfect_is_maximizer"] and res.second_best_count <= res.best_count - 1
    if expected is not None:
        ok = ok and res.best_count == expected
    report["passed"] = bool(ok)
    if not ok:
        witness = next((c for c in res.best_configs if c != perfect), None)
        report["witness"] = sorted(witness) if witness is not None else None
    return report


@dataclass
class LoopDecomposition:
    """Closed walks through a pattern interior; ``center`` is left out."""

    loops: list[list[int]]
    center: int
    meta: dict = field(default_factory=dict)


def build_loops(adjacency: dict, occupied: set, center: int) -> LoopDecomposition:
    """Closed even walks covering every vertex except ``center``.

    Each occupied vertex appears exactly once and picks two distinct vacant
    neighbours; vacant vertices may be revisited.  The pairing is found as a
    small integer program: occupied degree 2, vacant degree even and positive.
    An Euler circuit of each component of the pairing multigraph is a walk
    that alternates occupied/vacant, so it has even length and is exactly half
    occupied.
    """
    verts = [v for v in adjacency if v != center]
    occ = [v for v in verts if v in occupied]
    vac = [v for v in verts if v not in occupied]
    vi = {v: i for i, v in enumerate(vac)}
    pairs = [(o, w) for o in occ for w in sorted(adjacency[o]) if w in vi]
    ny, nz = len(pairs), len(vac)
    rows, cols, vals, lo, hi = [], [], [], [], []
    r = 0
    for o in occ:
        for j, (a, _) in enumerate(pairs):
            if a == o:
                rows.append(r), cols.append(j), vals.append(1)
        lo.append(2), hi.append(2)
        r += 1
    by_vac: dict[int, list[int]] = {}
    for j, (_, w) in enumerate(pairs):
        by_vac.setdefault(w, []).append(j)
    for w in vac:
        for j in by_vac.get(w, []):
            rows.append(r), cols.append(j), vals.append(1)
        rows.append(r), cols.append(ny + vi[w]), vals.append(-2)
        lo.append(0), hi.append(0)
        r += 1
    a = coo_matrix((vals, (rows, cols)), shape=(r, ny + nz)).tocsr()
    ub = np.concatenate([np.ones(ny), np.full(nz, 8)])
    lb = np.concatenate([np.zeros(ny), np.ones(nz)])
    # fewest repeated visits
    c = np.concatenate([np.zeros(ny), np.ones(nz)])
    res = milp(c, constraints=[LinearConstraint(a, lo, hi)], integrality=np.ones(ny + nz),
               bounds=Bounds(lb, ub))
    if res.status != 0:
        raise CountingError(f"no loop pairing exists: {res.message}")
    y = np.round(res.x[:ny]).astype(int)
    multi: dict[int, list[int]] = {v: [] for v in verts}
    for j, (o, w) in enumerate(pairs):
        if y[j]:
            multi[o].append(w)
            multi[w].append(o)
    loops = []
    remaining = {v: list(nb) for v, nb in multi.items()}
    for start in sorted(occ):
        if not remaining[start]:
            continue
        # Hierholzer on the pairing multigraph
        stack, walk = [start], []
        while stack:
            u = stack[-1]
            if remaining[u]:
                w = remaining[u].pop()
                remaining[w].remove(u)
                stack.append(w)
            else:
                walk.append(stack.pop())
        loops.append(walk[:-1])
    return LoopDecomposition(loops, center, {"repeats": int(res.fun)})


def loop_decomposition_check(adjacency: dict, interior: set, perfect: set, ld: LoopDecomposition) -> dict:
    """Check a loop transcription.

    Loops must be closed walks of even length in the interior graph avoiding
    the centre; every other interior vertex must be visited and every occupied
    one exactly once; the perfect configuration must fill exactly half of each
    loop, which is the most any admissible configuration can place on it.
    """
    problems = []
    visits: dict[int, int] = {}
    for i, loop in enumerate(ld.loops):
        n = len(loop)
        if n % 2:
            problems.append((i, "odd length"))
            continue
        if ld.center in loop:
            problems.append((i, "passes through the centre"))
        for j in range(n):
            a, b = loop[j], loop[(j + 1) % n]
            if a not in interior or b not in adjacency.get(a, ()):
                problems.append((i, f"step {a}->{b} is not an interior edge"))
                break
        for v in loop:
            visits[v] = visits.get(v, 0) + 1
        n_occ = sum(1 for v in loop if v in perfect)
        if 2 * n_occ != n:
            problems.append((i, f"perfect occupies {n_occ} of {n}"))
        # at most half of a closed walk can be occupied: consecutive steps are edges
        for j in range(n):
            if loop[j] in perfect and loop[(j + 1) % n] in perfect:
                problems.append((i, "perfect configuration occupies an edge"))
                break
    missing = sorted(v for v in interior if v != ld.center and v not in visits)
    if missing:
        problems.append((None, f"unvisited vertices {missing[:10]}"))
    doubled = sorted(v for v in perfect if visits.get(v, 0) > 1 and v != ld.center)
    if doubled:
        problems.append((None, f"occupied vertices visited twice {doubled[:10]}"))
    total = sum(len(l) for l in ld.loops)
    return {
        "passed": not problems,
        "problems": problems,
        "n_loops": len(ld.loops),
        "total_length": total,
        "repeated_visits": total - (len(interior) - 1),
    }


def loop_partition_polynomial(m: int) -> list[int]:
    """Coefficients (constant first) of the loop partition function of a 2m-cycle.

    2**-2m ((1+s)**2m + (1-s)**2m) with s = sqrt(1+4u): odd powers of s
    cancel, s**2j = (1+4u)**j, and the 2**-2m prefactor divides out.
    """
    if m < 1:
        raise ValueError("m must be positive")
    n = 2 * m
    coeffs = [Fraction(0)] * (m + 1)
    for j in range(m + 1):
        c = 2 * comb(n, 2 * j)
        for i in range(j + 1):
            coeffs[i] += c * comb(j, i) * 4**i
    out = [x / 2**n for x in coeffs]
    if any(x.denominator != 1 for x in out):
        raise CountingError("non-integral loop polynomial")
    return [int(x) for x in out]


def loop_partition_function(m: int, u) -> Fraction:
    """Exact value at activity ``u``; also checks the bound Z < 2 (1 + sqrt u)**2m."""
    u = Fraction(u)
    coeffs = loop_partition_polynomial(m)
    z = sum(c * u**i for i, c in enumerate(coeffs))
    if u >= 0 and not float(z) < 2 * (1 + float(u) ** 0.5) ** (2 * m):
        raise CountingError("loop bound violated")
    return z


def cycle_brute_force(n: int, u) -> Fraction:
    """Sum of u**|S| over independent sets S of the n-cycle, by enumeration."""
    if n > 24:
        raise CountingError("cycle enumeration limited to n <= 24")
    u = Fraction(u)
    total = Fraction(0)
    for s in range(1 << n):
        rot = ((s >> 1) | ((s & 1) << (n - 1))) if n > 1 else 0
        if n >= 2 and s & rot:
            continue
        total += u ** bin(s).count("1")
    return total


def thin_triple(g, t) -> tuple[int, int, int] | None:
    """Three same-parity vertices on the short diagonals of two adjacent thin rhombi.

    Returns the shared obtuse corner first, or None if the patch has no two
    thin rhombi sharing an edge.
    """
    from .tiling import THIN

    thin = [r for r in t.rhombi if r.kind == THIN]
    by_edge: dict = {}
    for r in thin:
        for a, b in r.edges():
            by_edge.setdefault(frozenset((a, b)), []).append(r)
    for edge, rs in sorted(by_edge.items(), key=lambda kv: sorted(p.coeffs for p in kv[0])):
        if len(rs) != 2:
            continue
        r1, r2 = rs
        # obtuse corners of a thin rhombus sit at positions 1 and 3
        ob1 = {r1.vertices[1], r1.vertices[3]}
        ob2 = {r2.vertices[1], r2.vertices[3]}
        shared = ob1 & ob2
        if len(shared) != 1:
            continue
        s = shared.pop()
        a = (ob1 - {s}).pop()
        b = (ob2 - {s}).pop()
        ids = tuple(g.index[p] for p in (s, a, b))
        return ids
    return None
