import pytest

from evencycle.errors import PreconditionError
from evencycle.families import (detect_example1, detect_example2, gen_example1, gen_example2,
                                gen_parity_4p1, gen_parity_4p2)
from evencycle.graph import complete_graph, is_2_connected, min_degree, remove_edges, vertex_connectivity
from evencycle.packing import Infeasible, cycles_of_length, oracle_pack


def test_example1_claims():
    g, c = gen_example1(3, 4, 0)
    assert (g.n, min_degree(g), vertex_connectivity(g)) == (9, 4, 3)
    assert isinstance(oracle_pack(g, c.blocked_partition), Infeasible)
    g, c = gen_example1(2, 6, 3)
    assert (g.n, min_degree(g), vertex_connectivity(g)) == (11, 6, 3)


def test_example2_claims():
    g, c = gen_example2(4, 9)
    assert (g.n, min_degree(g)) == (9, 4)
    assert isinstance(oracle_pack(g, c.blocked_partition), Infeasible)
    # u1 v1 v1' u2 v2 v2' u3 v3 with U = {6, 7, 8}
    c8 = [6, 0, 1, 7, 2, 3, 8, 4]
    assert all(g.has_edge(a, b) for a, b in zip(c8, c8[1:] + c8[:1]))
    with pytest.raises(PreconditionError):
        gen_example2(4, 8)


def test_parity_claims():
    g, c = gen_parity_4p2(3)
    assert (g.n, min_degree(g)) == (14, 6) and is_2_connected(g)
    assert isinstance(oracle_pack(g, c.blocked_partition), Infeasible)
    g, c = gen_parity_4p1(3)
    assert (g.n, min_degree(g)) == (13, 6) and is_2_connected(g)
    assert isinstance(oracle_pack(g, c.blocked_partition), Infeasible)
    for gen in (gen_parity_4p1, gen_parity_4p2):
        with pytest.raises(PreconditionError):
            gen(2)


def test_parameter_errors():
    for args in ((1, 4, 0), (3, 5, 0), (3, 4, 4), (2, 4, 0)):
        if args == (2, 4, 0):
            gen_example1(*args)  # hub degree 4 = q is allowed
            continue
        with pytest.raises(PreconditionError):
            gen_example1(*args)


def test_detectors():
    g, _ = gen_example1(3, 4, 0)
    assert detect_example1(g).params == {"l": 3, "q": 4, "k": 0}
    g, _ = gen_example2(4, 9)
    sub = remove_edges(g, [(6, 7)])
    m = detect_example2(sub)
    assert m is not None and m.params["q"] == 4
    k6 = complete_graph(6)
    assert detect_example1(k6) is None and detect_example2(k6) is None


def _grid():
    for l in range(2, 5):
        for q in (4, 6):
            for k in range(4):
                if l * (q - 2) + 3 <= 16 and l * (q - 2) + k >= q:
                    yield "ex1", (l, q, k)
    for q in (4, 6, 8):
        for n in range(q + 1, 17):
            if (n - q + 1) % 2 == 0:
                yield "ex2", (q, n)


@pytest.mark.parametrize("fam,args", list(_grid()))
def test_generator_round_trip_and_claims(fam, args):
    gen, det = (gen_example1, detect_example1) if fam == "ex1" else (gen_example2, detect_example2)
    g, cert = gen(*args)  # claims re-verified on construction
    m = det(g)
    assert m is not None
    if fam == "ex1":
        assert m.params == {"l": args[0], "q": args[1], "k": args[2]}
    else:
        assert m.params["q"] == args[0]
    assert isinstance(oracle_pack(g, cert.blocked_partition, 16), Infeasible)


@pytest.mark.parametrize("args", [(3, 4, 0), (2, 4, 3), (2, 6, 1), (3, 4, 2)])
def test_example1_cycles_use_two_hubs(args):
    g, _ = gen_example1(*args)
    q = args[1]
    hubs = {g.n - 3, g.n - 2, g.n - 1}
    count = 0
    for c in cycles_of_length(g, q, g.full):
        count += 1
        assert len(hubs & set(c)) >= 2
    assert count > 0
