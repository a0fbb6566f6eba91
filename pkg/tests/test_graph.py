from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given

from evencycle.errors import GraphFormatError, PreconditionError
from evencycle.graph import (Graph, articulation_points, complete_bipartite, complete_graph, components,
                             cycle_graph, format_edge_list, induced_subgraph, is_2_connected, is_bipartite,
                             is_connected, min_degree, parse_edge_list, path_graph, petersen_graph,
                             vertex_connectivity)

from conftest import graphs, to_nx


def star(k):
    return Graph(k + 1, [(0, i) for i in range(1, k + 1)])


def two_k4_sharing_vertex():
    return Graph(7, list(combinations(range(4), 2)) + list(combinations(range(3, 7), 2)))


def test_min_degree_examples():
    assert min_degree(complete_graph(5)) == 4
    assert min_degree(cycle_graph(6)) == 2
    assert min_degree(star(3)) == 1


def test_two_connected_examples():
    assert is_2_connected(cycle_graph(5))
    assert not is_2_connected(path_graph(4))
    assert not is_2_connected(two_k4_sharing_vertex())
    assert articulation_points(two_k4_sharing_vertex()) == [3]


def test_induced_subgraph_examples():
    h, idx = induced_subgraph(complete_graph(5), [0, 2, 4])
    assert h == complete_graph(3) and idx == [0, 2, 4]
    h, _ = induced_subgraph(cycle_graph(6), [0, 2, 4])
    assert h.edge_count == 0 and h.n == 3
    h, _ = induced_subgraph(complete_bipartite(3, 3), [0, 1, 2])
    assert h.edge_count == 0
    with pytest.raises(PreconditionError):
        induced_subgraph(cycle_graph(4), [])


def test_graph_rejects_bad_input():
    with pytest.raises(PreconditionError):
        Graph(3, [(0, 0)])
    with pytest.raises(PreconditionError):
        Graph(3, [(0, 3)])
    with pytest.raises(AttributeError):
        cycle_graph(4).n = 5


def test_petersen_basics():
    g = petersen_graph()
    assert g.n == 10 and g.edge_count == 15 and set(g.degrees()) == {3}
    assert vertex_connectivity(g) == 3


def test_edge_list_parse():
    g, labels, dupes = parse_edge_list("# comment\na b\nb c # trailing\n\nc a\na b\n")
    assert g == cycle_graph(3) and labels == ["a", "b", "c"] and dupes == 1
    with pytest.raises(GraphFormatError):
        parse_edge_list("a a\n")
    with pytest.raises(GraphFormatError):
        parse_edge_list("1 2 3\n")


@given(graphs(n_max=10))
def test_edge_list_round_trip(g):
    h, labels, _ = parse_edge_list(format_edge_list(g, ["header"]))
    assert h == g and labels == [str(i) for i in range(g.n)]


@given(graphs(n_max=10))
def test_invariants(g):
    assert g.edge_count * 2 == sum(g.degrees())
    for u in range(g.n):
        assert not g.has_edge(u, u)
        for v in g.neighbors(u):
            assert g.has_edge(v, u)


@given(graphs(n_max=10))
def test_two_connected_matches_brute_force(g):
    def connected_without(v):
        rest = [u for u in range(g.n) if u != v]
        h, _ = induced_subgraph(g, rest)
        return is_connected(h)

    brute = g.n >= 3 and is_connected(g) and all(connected_without(v) for v in range(g.n))
    assert is_2_connected(g) == brute


@given(graphs(n_max=9))
def test_structure_matches_networkx(g):
    h = to_nx(g)
    assert len(components(g)) == nx.number_connected_components(h)
    assert (is_bipartite(g) is not None) == nx.is_bipartite(h)
    if g.n >= 2:
        assert vertex_connectivity(g) == nx.node_connectivity(h)
