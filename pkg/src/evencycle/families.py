"""Generators and detectors for the graphs that block an even-cycle packing.

Every generator returns the graph with a certificate whose degree and
connectivity claims are recomputed before it is handed out.  Vertex
numbering is fixed (cliques first, hubs and apex vertices last) so the
edge lists are byte-stable.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional

from .errors import DefectError, PreconditionError
from .graph import Graph, bits, components, min_degree, vertex_connectivity
from .ladders import TargetPartition

FAMILIES = ("Ex1", "Ex2", "Par4p2", "Par4p1")


@dataclass(frozen=True)
class ExtremalFamilyCert:
    family: str
    params: dict = field(hash=False)
    claimed_min_degree: int
    claimed_connectivity: int
    blocked_partition: TargetPartition

    def verify(self, g: Graph) -> None:
        if min_degree(g) != self.claimed_min_degree:
            raise DefectError(f"{self.family}: min degree {min_degree(g)} != {self.claimed_min_degree}")
        kappa = vertex_connectivity(g)
        if kappa != self.claimed_connectivity:
            raise DefectError(f"{self.family}: connectivity {kappa} != {self.claimed_connectivity}")

    def to_json(self) -> dict:
        return {"family": self.family, "params": dict(self.params),
                "min_degree": self.claimed_min_degree, "connectivity": self.claimed_connectivity,
                "blocked_partition": list(self.blocked_partition.targets)}


def _clique_edges(vs) -> list[tuple[int, int]]:
    return list(combinations(vs, 2))


HUB_PAIRS = ((0, 1), (1, 2), (0, 2))


def gen_example1(l: int, q: int, k: int) -> tuple[Graph, ExtremalFamilyCert]:
    """``l`` cliques ``K_{q-2}`` plus three hubs joined to every clique vertex and ``k`` hub edges."""
    if l < 2:
        raise PreconditionError("l must be at least 2")
    if q < 4 or q % 2:
        raise PreconditionError("q must be even and at least 4")
    if not 0 <= k <= 3:
        raise PreconditionError("k must be in 0..3")
    if l * (q - 2) + k < q:
        raise PreconditionError("hub degree l(q-2)+k falls below q")
    body = l * (q - 2)
    hubs = [body, body + 1, body + 2]
    edges = []
    for i in range(l):
        edges += _clique_edges(range(i * (q - 2), (i + 1) * (q - 2)))
    edges += [(v, h) for v in range(body) for h in hubs]
    edges += [(hubs[x], hubs[y]) for x, y in HUB_PAIRS[:k]]
    g = Graph(body + 3, edges)
    cert = ExtremalFamilyCert("Ex1", {"l": l, "q": q, "k": k}, q, 3, TargetPartition((q // 2, q // 2)))
    cert.verify(g)
    return g, cert


def gen_example2(q: int, n: int) -> tuple[Graph, ExtremalFamilyCert]:
    """``K_{q-1}`` fully joined to ``n-q+1`` vertices that carry a perfect matching.

    The matched side comes first (``0..n-q``, partners ``2i, 2i+1``), the
    clique side last.
    """
    if q < 4 or q % 2:
        raise PreconditionError("q must be even and at least 4")
    side = n - q + 1
    if side < 2 or side % 2:
        raise PreconditionError(f"n - q + 1 = {side} must be even and at least 2")
    u = list(range(side, n))
    edges = [(2 * i, 2 * i + 1) for i in range(side // 2)]
    edges += [(v, w) for v in range(side) for w in u]
    edges += _clique_edges(u)
    g = Graph(n, edges)
    # with a single matched pair the graph is K_{q+1}
    kappa = q if side == 2 else q - 1
    cert = ExtremalFamilyCert("Ex2", {"q": q, "n": n}, q, kappa, TargetPartition((2,) * (q // 2)))
    cert.verify(g)
    return g, cert


def _require_odd_p(p: int) -> None:
    if p < 3 or p % 2 == 0:
        raise PreconditionError("p must be odd and at least 3")


def gen_parity_4p2(p: int) -> tuple[Graph, ExtremalFamilyCert]:
    """Two copies of ``K_{2p+1}`` minus an edge, the missing pairs crossed by a 2-matching."""
    _require_odd_p(p)
    size = 2 * p + 1
    left = list(range(size))
    right = list(range(size, 2 * size))
    v1, v2 = left[-2], left[-1]
    u1, u2 = right[-2], right[-1]
    edges = [e for e in _clique_edges(left) if e != (v1, v2)]
    edges += [e for e in _clique_edges(right) if e != (u1, u2)]
    edges += [(v1, u1), (v2, u2)]
    g = Graph(2 * size, edges)
    cert = ExtremalFamilyCert("Par4p2", {"p": p}, 2 * p, 2, TargetPartition((2,) * p))
    cert.verify(g)
    return g, cert


def gen_parity_4p1(p: int) -> tuple[Graph, ExtremalFamilyCert]:
    """Two ``K_{2p}`` joined by one edge ``v v'`` plus an apex seeing everything else."""
    _require_odd_p(p)
    k1 = list(range(2 * p))
    k2 = list(range(2 * p, 4 * p))
    v, vp, w = k1[-1], k2[-1], 4 * p
    edges = _clique_edges(k1) + _clique_edges(k2) + [(v, vp)]
    edges += [(x, w) for x in k1 + k2 if x not in (v, vp)]
    g = Graph(4 * p + 1, edges)
    cert = ExtremalFamilyCert("Par4p1", {"p": p}, 2 * p, 2, TargetPartition((2,) * p))
    cert.verify(g)
    return g, cert


GENERATORS = {
    "ex1": gen_example1,
    "ex2": gen_example2,
    "par4p2": gen_parity_4p2,
    "par4p1": gen_parity_4p1,
}


# -- detectors ---------------------------------------------------------------

@dataclass(frozen=True)
class FamilyMatch:
    family: str
    params: dict = field(hash=False)
    witness: tuple[int, ...]  # hubs for Ex1, the clique side U for Ex2

    def to_json(self) -> dict:
        return {"family": self.family, "params": dict(self.params), "witness": list(self.witness)}


def detect_example1(g: Graph) -> Optional[FamilyMatch]:
    """Recognise ``G_k`` up to isomorphism by locating its three hubs."""
    n = g.n
    if n < 7:
        return None
    full = g.full
    cands = [v for v in range(n) if g.degree(v) >= n - 3]
    for hubs in combinations(cands, 3):
        hmask = sum(1 << h for h in hubs)
        rest = full & ~hmask
        if any(g.adj[h] & rest != rest for h in hubs):
            continue
        comps = components(g, rest)
        size = comps[0].bit_count()
        q = size + 2
        if len(comps) < 2 or q < 4 or q % 2 or any(c.bit_count() != size for c in comps):
            continue
        cliques = all(
            (g.adj[v] & c) == c & ~(1 << v) for c in comps for v in bits(c)
        )
        if not cliques:
            continue
        k = sum(1 for x, y in combinations(hubs, 2) if g.has_edge(x, y))
        return FamilyMatch("Ex1", {"l": len(comps), "q": q, "k": k}, tuple(hubs))
    return None


def detect_example2(g: Graph) -> Optional[FamilyMatch]:
    """Is ``g`` a spanning subgraph of an Example-2 graph with every cross edge kept?

    Looks for a set ``U`` of odd size ``q-1 >= 3`` joined to all of
    ``V = rest`` with ``|V|`` even and ``G[V]`` of maximum degree at most 1.
    Every ``v`` in ``V`` has ``U`` inside ``N(v)`` with at most one extra
    neighbour, so candidates come from neighbourhoods.
    """
    n = g.n
    full = g.full
    found = None
    seen: set[int] = set()
    for v in range(n):
        nb = g.adj[v]
        for u in [nb] + [nb & ~(1 << w) for w in bits(nb)]:
            if u in seen:
                continue
            seen.add(u)
            size = u.bit_count()
            rest = full & ~u
            if size < 3 or size % 2 == 0 or rest.bit_count() < 2 or rest.bit_count() % 2:
                continue
            if any(g.adj[x] & u != u for x in bits(rest)):
                continue
            if any((g.adj[x] & rest).bit_count() > 1 for x in bits(rest)):
                continue
            key = (size, tuple(bits(u)))
            if found is None or key < found:
                found = key
    if found is None:
        return None
    size, uset = found
    rest = full & ~sum(1 << x for x in uset)
    perfect = all((g.adj[x] & rest).bit_count() == 1 for x in bits(rest))
    return FamilyMatch("Ex2", {"q": size + 1, "n": n, "perfect_matching": perfect}, uset)
