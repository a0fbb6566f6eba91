import networkx as nx
from hypothesis import given, strategies as st

from evencycle.graph import Graph, complete_graph
from evencycle.matching import bipartite_matching, saturating_matching, star_packing

from conftest import graphs


@given(graphs(n_min=2, n_max=10))
def test_matching_size_matches_networkx(g):
    left = [v for v in range(g.n) if v % 2 == 0]
    right = [v for v in range(g.n) if v % 2 == 1]
    m = bipartite_matching(g, left, right)
    for u, w in m.items():
        assert u in left and w in right and g.has_edge(u, w)
    assert len(set(m.values())) == len(m)
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from((u, v) for u, v in g.edges() if (u % 2) != (v % 2))
    assert len(m) == len(nx.max_weight_matching(h, maxcardinality=True))


def test_saturating():
    g = Graph(4, [(0, 2), (1, 2)])
    assert saturating_matching(g, [0, 1], [2, 3]) is None
    m = saturating_matching(complete_graph(4), [0, 1], [2, 3])
    assert sorted(m) == [0, 1] and sorted(m.values()) == [2, 3]
    assert m == saturating_matching(complete_graph(4), [1, 0], [3, 2])


def _brute_stars(g, leaves):
    best = 0
    from itertools import combinations

    stars = [(c, ls) for c in range(g.n) for ls in combinations(g.neighbors(c), leaves)]

    def rec(i, used, count):
        nonlocal best
        best = max(best, count)
        for j in range(i, len(stars)):
            c, ls = stars[j]
            vs = (c,) + ls
            if not any(v in used for v in vs):
                rec(j + 1, used | set(vs), count + 1)

    rec(0, set(), 0)
    return best


@given(graphs(n_min=1, n_max=8), st.integers(2, 3))
def test_star_packing_exact(g, leaves):
    stars = star_packing(g, range(g.n), leaves)
    used = set()
    for c, ls in stars:
        assert len(ls) == leaves and all(g.has_edge(c, x) for x in ls)
        vs = {c, *ls}
        assert not vs & used
        used |= vs
    assert len(stars) == _brute_stars(g, leaves)


def test_star_packing_greedy_beyond_cap():
    g = complete_graph(24)
    assert len(star_packing(g, range(24), 3)) == 6
