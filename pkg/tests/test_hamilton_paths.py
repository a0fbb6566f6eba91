from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given

from evencycle.enumerate import graphs as all_graphs
from evencycle.errors import PreconditionError
from evencycle.graph import (Graph, complete_bipartite, complete_graph, cycle_graph, is_2_connected, is_cycle,
                             is_path, min_degree, petersen_graph)
from evencycle.hamilton import find_hamilton_cycle, hamilton_path, longest_path, posa_check
from evencycle.paths import DominatingPath, HamPath, path_trichotomy, two_disjoint_paths, validate_trichotomy

from conftest import gnp, graphs, to_nx


def brute_min_pair(g, u1, u2):
    """Smallest total vertex count of two disjoint U1-U2 paths, by enumerating simple paths."""
    h = to_nx(g)
    paths = []
    for s in u1:
        for t in u2:
            for p in nx.all_simple_paths(h, s, t):
                inner = p[1:-1]
                if not set(inner) & (set(u1) | set(u2)):
                    paths.append(p)
    best = None
    for p, q in combinations(paths, 2):
        if not set(p) & set(q):
            tot = len(p) + len(q)
            best = tot if best is None else min(best, tot)
    return best


def test_posa_examples():
    assert posa_check(complete_graph(4))
    assert not posa_check(cycle_graph(5))
    assert not posa_check(Graph(4, [(0, 1), (0, 2), (0, 3)]))
    with pytest.raises(PreconditionError):
        posa_check(complete_graph(2))


def test_hamilton_examples():
    c = find_hamilton_cycle(complete_graph(5))
    assert len(c) == 5 and is_cycle(complete_graph(5), c)
    k33 = complete_bipartite(3, 3)
    assert is_cycle(k33, find_hamilton_cycle(k33))
    assert find_hamilton_cycle(petersen_graph()) is None


def test_hamilton_path_with_ends():
    g = complete_graph(9)
    p = hamilton_path(g, 2, 7)
    assert p[0] == 2 and p[-1] == 7 and is_path(g, p) and len(p) == 9
    assert hamilton_path(Graph(4, [(0, 1), (0, 2), (0, 3)])) is None


@pytest.mark.parametrize("n", range(3, 8))
def test_posa_sufficient_small(n):
    for _, g in all_graphs(n):
        if posa_check(g):
            c = find_hamilton_cycle(g)
            assert c is not None and is_cycle(g, c)


@given(graphs(n_min=3, n_max=9))
def test_hamilton_agrees_with_brute_force(g):
    h = to_nx(g)
    has = any(nx.is_simple_path(h, list(p)) and h.has_edge(p[-1], p[0])
              for p in _perms(g.n))
    c = find_hamilton_cycle(g)
    assert (c is not None) == has
    if c is not None:
        assert is_cycle(g, c) and len(c) == g.n


def _perms(n):
    from itertools import permutations
    for rest in permutations(range(1, n)):
        if rest[0] < rest[-1]:
            yield (0,) + rest


def test_dirac_random(rng):
    for _ in range(30):
        n = rng.randint(10, 60)
        g = gnp(n, 0.75, rng)
        if min_degree(g) * 2 < n:
            continue
        c = find_hamilton_cycle(g, seed=1)
        assert c is not None and is_cycle(g, c) and len(c) == n


def test_longest_path_exact():
    g = Graph(6, [(0, 1), (1, 2), (2, 3), (1, 4), (4, 5)])
    p, done = longest_path(g)
    assert done and len(p) == 5 and is_path(g, p)


def test_two_disjoint_paths_examples():
    c4 = cycle_graph(4)  # a-b-c-d as 0-1-2-3
    p, q = two_disjoint_paths(c4, [0, 2], [1, 3])
    assert len(p) + len(q) == 4
    k13 = Graph(4, [(0, 1), (0, 2), (0, 3)])
    assert two_disjoint_paths(k13, [1, 2], [0, 3]) is None


@given(graphs(n_min=4, n_max=8))
def test_two_disjoint_paths_minimal(g):
    if not is_2_connected(g):
        return
    u1, u2 = [0, 1], [g.n - 2, g.n - 1]
    got = two_disjoint_paths(g, u1, u2)
    assert got is not None  # Menger
    p, q = got
    for path in (p, q):
        assert is_path(g, path) and path[0] in u1 and path[-1] in u2
    assert not set(p) & set(q)
    assert len(p) + len(q) == brute_min_pair(g, u1, u2)


def test_trichotomy_examples():
    w = path_trichotomy(complete_graph(4), range(4))
    assert isinstance(w, HamPath) and len(w.path) == 4
    k13 = Graph(4, [(0, 1), (0, 2), (0, 3)])
    w = path_trichotomy(k13, range(4))
    assert isinstance(w, DominatingPath) and len(w.path) == 3 and validate_trichotomy(k13, range(4), w)
    edges = list(combinations(range(5), 2)) + list(combinations(range(5, 10), 2)) + [(4, 5)]
    two_k5 = Graph(10, edges)
    w = path_trichotomy(two_k5, range(10))
    assert isinstance(w, HamPath) and validate_trichotomy(two_k5, range(10), w)


def test_trichotomy_two_long_paths():
    # K_{3,9}: delta 3, longest path has 7 vertices, leftover leaves see only the hub side
    g = complete_bipartite(3, 9)
    w = path_trichotomy(g, range(12))
    assert validate_trichotomy(g, range(12), w)


@given(graphs(n_min=4, n_max=9))
def test_trichotomy_witness_validates(g):
    from evencycle.graph import components, bits
    for comp in components(g):
        vs = list(bits(comp))
        if len(vs) >= max(2, 2 * min_degree(g)):
            assert validate_trichotomy(g, vs, path_trichotomy(g, vs))
