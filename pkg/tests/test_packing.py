from fractions import Fraction
from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given, strategies as st

from evencycle.errors import PreconditionError
from evencycle.families import gen_example1, gen_example2, gen_parity_4p1, gen_parity_4p2
from evencycle.graph import complete_bipartite, complete_graph, cycle_graph, to_mask
from evencycle.ladders import CyclePacking, TargetPartition, partitions, validate_packing
from evencycle.packing import (BetaExtremalCert, Infeasible, OverCap, as_fraction, cycles_of_length,
                               detect_beta_extremal, oracle_pack, search_beta_extremal, spectrum)

from conftest import graphs, to_nx


def T(*xs):
    return TargetPartition(xs)


def nx_cycles(g):
    return [c for c in nx.simple_cycles(to_nx(g))]


def brute_feasible(g, t):
    """Independent check: try every combination of networkx cycles of the right lengths."""
    by_len = {}
    for c in nx_cycles(g):
        by_len.setdefault(len(c), []).append(frozenset(c))
    need = sorted((2 * m for m in t.targets), reverse=True)

    def rec(i, used):
        if i == len(need):
            return True
        return any(not (c & used) and rec(i + 1, used | c) for c in by_len.get(need[i], []))

    return rec(0, frozenset())


def test_oracle_examples():
    p = oracle_pack(complete_graph(8), T(2, 2))
    assert isinstance(p, CyclePacking) and validate_packing(complete_graph(8), (2, 2), p.cycles)
    g, _ = gen_example1(3, 4, 0)
    assert isinstance(oracle_pack(g, T(2, 2)), Infeasible)
    g, _ = gen_example2(4, 9)
    assert isinstance(oracle_pack(g, T(2, 2)), Infeasible)
    assert isinstance(oracle_pack(g, T(4)), CyclePacking)
    assert oracle_pack(complete_graph(17), T(2)) == OverCap(17, 16)


def test_oracle_parity_families():
    for gen in (gen_parity_4p1, gen_parity_4p2):
        g, _ = gen(3)
        assert isinstance(oracle_pack(g, T(2, 2, 2)), Infeasible)


@given(graphs(n_min=4, n_max=8), st.integers(0, 3))
def test_oracle_matches_brute_force(g, pick):
    parts = [t for total in range(2, g.n // 2 + 1) for t in partitions(total)]
    t = parts[pick % len(parts)]
    res = oracle_pack(g, t)
    assert isinstance(res, CyclePacking) == brute_feasible(g, t)
    if isinstance(res, CyclePacking):
        assert validate_packing(g, t.targets, res.cycles)


@given(graphs(n_min=3, n_max=8), st.integers(3, 8))
def test_cycles_of_length_counts(g, length):
    ours = list(cycles_of_length(g, length, g.full))
    ref = [c for c in nx_cycles(g) if len(c) == length]
    assert len(ours) == len(ref)
    assert len({frozenset(c) for c in ours} | set()) <= len(ours)


def test_spectrum_examples():
    s = spectrum(complete_graph(5))
    assert s.even_lengths == {4} and s.odd_lengths == {3, 5} and s.complete
    s = spectrum(cycle_graph(6))
    assert s.even_lengths == {6} and not s.odd_lengths
    s = spectrum(complete_bipartite(3, 3))
    assert s.even_lengths == {4, 6} and not s.odd_lengths


@given(graphs(n_min=3, n_max=10))
def test_spectrum_matches_networkx(g):
    lens = {len(c) for c in nx_cycles(g)}
    s = spectrum(g)
    assert s.even_lengths == {x for x in lens if x % 2 == 0}
    assert s.odd_lengths == {x for x in lens if x % 2 == 1}


def test_spectrum_budget_flag():
    # no odd cycles, so the odd-length searches must run out of budget
    s = spectrum(complete_bipartite(8, 8), cap=14, budget=50)
    assert not s.complete and not s.odd_lengths


def test_as_fraction():
    assert as_fraction(0.1) == Fraction(1, 10)
    assert as_fraction("9/100") == Fraction(9, 100)


def test_beta_extremal_examples():
    g = complete_bipartite(4, 6)
    cert = detect_beta_extremal(g, Fraction(1, 20))
    assert cert.b_set == frozenset(range(4, 10)) and cert.validate(g)
    g, _ = gen_example2(4, 9)
    assert search_beta_extremal(g, Fraction(1, 10)).cert is None
    cert = detect_beta_extremal(g, Fraction(12, 100))
    assert cert.b_set == frozenset(range(6)) and cert.validate(g)
    with pytest.raises(PreconditionError):
        detect_beta_extremal(g, 1)


def test_complete_graph_is_extremal_under_the_literal_definition():
    # |B| >= n - delta - beta n = 0.5 and a single vertex has no neighbour inside B
    g = complete_graph(10)
    found = search_beta_extremal(g, Fraction(1, 20))
    assert found.proof and found.cert is not None and len(found.cert.b_set) == 1
    assert BetaExtremalCert(Fraction(1, 20), frozenset({0}), frozenset()).validate(g)


@given(graphs(n_min=4, n_max=9), st.sampled_from([Fraction(1, 10), Fraction(1, 5)]))
def test_exhaustive_extremal_search_is_complete(g, beta):
    found = search_beta_extremal(g, beta)
    brute = any(BetaExtremalCert(beta, frozenset(s),
                                 frozenset(v for v in s if (g.adj[v] & to_mask(s)).bit_count() > beta * g.n)).validate(g)
                for r in range(g.n + 1) for s in combinations(range(g.n), r))
    assert (found.cert is not None) == brute
    if found.cert is not None:
        assert found.cert.validate(g)
        assert detect_beta_extremal(g, beta).validate(g)
