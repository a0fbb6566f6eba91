"""Immutable simple graphs on vertices ``0..n-1`` with bitset adjacency.

Neighbourhoods are Python ints used as bitsets, so set algebra on vertex
sets is a handful of integer operations.  Everything here is a pure
function of its inputs.
"""
from __future__ import annotations

import logging
from collections import deque
from typing import Iterable, Iterator, Sequence

from .errors import GraphFormatError, PreconditionError

log = logging.getLogger(__name__)

VertexSet = frozenset  # members drawn from 0..n-1
Path = tuple  # ordered distinct vertices


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of set bits in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


class Graph:
    __slots__ = ("n", "adj", "edge_count")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise PreconditionError("vertex count must be non-negative")
        masks = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise PreconditionError(f"edge ({u}, {v}) outside 0..{n - 1}")
            if u == v:
                raise PreconditionError(f"self-loop at {u}")
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        self._freeze(masks)

    @classmethod
    def from_masks(cls, masks: Sequence[int]) -> "Graph":
        g = cls.__new__(cls)
        n = len(masks)
        for v, m in enumerate(masks):
            if m >> n or (m >> v) & 1:
                raise PreconditionError(f"bad neighbourhood for vertex {v}")
            for u in bits(m):
                if not (masks[u] >> v) & 1:
                    raise PreconditionError(f"asymmetric adjacency {v}->{u}")
        g._freeze(list(masks))
        return g

    def _freeze(self, masks: list[int]) -> None:
        object.__setattr__(self, "n", len(masks))
        object.__setattr__(self, "adj", tuple(masks))
        object.__setattr__(self, "edge_count", sum(m.bit_count() for m in masks) // 2)

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self.adj[v]))

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.adj[u] >> v) & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u] >> (u + 1) << (u + 1))]

    def degrees(self) -> list[int]:
        return [m.bit_count() for m in self.adj]

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.adj == other.adj

    def __hash__(self) -> int:
        return hash(self.adj)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.edge_count})"


# -- small constructors used across the package and its tests ---------------

def complete_graph(n: int) -> Graph:
    return Graph(n, ((u, v) for u in range(n) for v in range(u + 1, n)))


def cycle_graph(n: int) -> Graph:
    return Graph(n, ((i, (i + 1) % n) for i in range(n)))


def path_graph(n: int) -> Graph:
    return Graph(n, ((i, i + 1) for i in range(n - 1)))


def complete_bipartite(a: int, b: int) -> Graph:
    """``K_{a,b}`` with parts ``0..a-1`` and ``a..a+b-1``."""
    return Graph(a + b, ((u, a + v) for u in range(a) for v in range(b)))


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)


def disjoint_union(*graphs: Graph) -> Graph:
    edges, off = [], 0
    for g in graphs:
        edges += [(u + off, v + off) for u, v in g.edges()]
        off += g.n
    return Graph(off, edges)


def add_edges(g: Graph, extra: Iterable[tuple[int, int]]) -> Graph:
    return Graph(g.n, list(g.edges()) + list(extra))


def remove_edges(g: Graph, drop: Iterable[tuple[int, int]]) -> Graph:
    gone = {frozenset(e) for e in drop}
    return Graph(g.n, (e for e in g.edges() if frozenset(e) not in gone))


# -- structural queries ------------------------------------------------------

def min_degree(g: Graph) -> int:
    if g.n < 1:
        raise PreconditionError("min_degree needs at least one vertex")
    return min(m.bit_count() for m in g.adj)


def max_degree(g: Graph) -> int:
    return max((m.bit_count() for m in g.adj), default=0)


def reach(g: Graph, start: int, within: int) -> int:
    """Bitset of vertices reachable from ``start`` inside ``within``."""
    seen = 1 << start
    frontier = seen
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= g.adj[v]
        nxt &= within & ~seen
        seen |= nxt
        frontier = nxt
    return seen


def components(g: Graph, within: int | None = None) -> list[int]:
    """Connected components of ``g[within]`` as bitsets, ordered by least vertex."""
    rest = g.full if within is None else within
    out = []
    while rest:
        v = (rest & -rest).bit_length() - 1
        comp = reach(g, v, rest)
        out.append(comp)
        rest &= ~comp
    return out


def is_connected(g: Graph, within: int | None = None) -> bool:
    return len(components(g, within)) <= 1


def articulation_points(g: Graph) -> list[int]:
    """Cut vertices by iterative DFS low-link."""
    n = g.n
    disc = [-1] * n
    low = [0] * n
    cut = set()
    timer = 0
    for root in range(n):
        if disc[root] >= 0:
            continue
        disc[root] = low[root] = timer
        timer += 1
        root_children = 0
        stack = [(root, -1, iter(g.neighbors(root)))]
        while stack:
            v, parent, it = stack[-1]
            for w in it:
                if disc[w] < 0:
                    disc[w] = low[w] = timer
                    timer += 1
                    if v == root:
                        root_children += 1
                    stack.append((w, v, iter(g.neighbors(w))))
                    break
                if w != parent:
                    low[v] = min(low[v], disc[w])
            else:
                stack.pop()
                if parent >= 0:
                    low[parent] = min(low[parent], low[v])
                    if parent != root and low[v] >= disc[parent]:
                        cut.add(parent)
        if root_children > 1:
            cut.add(root)
    return sorted(cut)


def is_2_connected(g: Graph) -> bool:
    return g.n >= 3 and is_connected(g) and not articulation_points(g)


def _max_vertex_disjoint(g: Graph, s: int, t: int, limit: int) -> int:
    """Number of internally disjoint s-t paths (s, t non-adjacent), capped at ``limit``.

    Unit capacity flow on the vertex-split digraph: node 2v is v_in, 2v+1 is v_out.
    """
    n = g.n
    cap: dict[tuple[int, int], int] = {}
    nbrs: list[list[int]] = [[] for _ in range(2 * n)]

    def arc(a: int, b: int, c: int) -> None:
        if (a, b) not in cap:
            nbrs[a].append(b)
            nbrs[b].append(a)
            cap.setdefault((b, a), 0)
        cap[(a, b)] = cap.get((a, b), 0) + c

    big = n
    for v in range(n):
        arc(2 * v, 2 * v + 1, big if v in (s, t) else 1)
    for u, v in g.edges():
        arc(2 * u + 1, 2 * v, 1)
        arc(2 * v + 1, 2 * u, 1)
    src, snk = 2 * s + 1, 2 * t
    flow = 0
    while flow < limit:
        prev = {src: src}
        q = deque([src])
        while q and snk not in prev:
            a = q.popleft()
            for b in nbrs[a]:
                if b not in prev and cap[(a, b)] > 0:
                    prev[b] = a
                    q.append(b)
        if snk not in prev:
            break
        b = snk
        while b != src:
            a = prev[b]
            cap[(a, b)] -= 1
            cap[(b, a)] += 1
            b = a
        flow += 1
    return flow


def vertex_connectivity(g: Graph) -> int:
    """kappa(G) via Menger: minimum local connectivity over non-adjacent pairs."""
    n = g.n
    if n <= 1:
        return 0
    if not is_connected(g):
        return 0
    k = n - 1
    i = 0
    while i <= k and i < n:
        for j in range(i + 1, n):
            if not g.has_edge(i, j):
                k = min(k, _max_vertex_disjoint(g, i, j, k))
        i += 1
    return k


def induced_subgraph(g: Graph, s: Iterable[int]) -> tuple[Graph, list[int]]:
    """``g[s]`` relabelled to ``0..|s|-1``; also returns new-id -> old-id."""
    keep = sorted(set(s))
    if not keep:
        raise PreconditionError("induced_subgraph needs a nonempty vertex set")
    if keep[0] < 0 or keep[-1] >= g.n:
        raise PreconditionError("vertex set outside the graph")
    index = {v: i for i, v in enumerate(keep)}
    masks = []
    for v in keep:
        m = 0
        for w in bits(g.adj[v]):
            if w in index:
                m |= 1 << index[w]
        masks.append(m)
    return Graph.from_masks(masks), keep


def is_bipartite(g: Graph) -> tuple[int, int] | None:
    """Return a 2-colouring as (side0, side1) bitsets, or None."""
    colour = [-1] * g.n
    for root in range(g.n):
        if colour[root] >= 0:
            continue
        colour[root] = 0
        q = deque([root])
        while q:
            v = q.popleft()
            for w in bits(g.adj[v]):
                if colour[w] < 0:
                    colour[w] = 1 - colour[v]
                    q.append(w)
                elif colour[w] == colour[v]:
                    return None
    side0 = to_mask(v for v in range(g.n) if colour[v] == 0)
    return side0, g.full & ~side0


# -- path / cycle validation -------------------------------------------------

def is_path(g: Graph, path: Sequence[int]) -> bool:
    if not path or len(set(path)) != len(path):
        return False
    if any(not 0 <= v < g.n for v in path):
        return False
    return all(g.has_edge(a, b) for a, b in zip(path, path[1:]))


def is_cycle(g: Graph, cycle: Sequence[int]) -> bool:
    return len(cycle) >= 3 and is_path(g, cycle) and g.has_edge(cycle[-1], cycle[0])


# -- edge-list text format ---------------------------------------------------

def parse_edge_list(text: str) -> tuple[Graph, list[str], int]:
    """Parse "u v" lines; '#' starts a comment.

    Labels map to ids in first-seen order.  Returns the graph, the id->label
    list and the number of parallel edges dropped.
    """
    ids: dict[str, int] = {}
    seen: set[tuple[int, int]] = set()
    dupes = 0
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) == 1:
            ids.setdefault(parts[0], len(ids))
            continue
        if len(parts) != 2:
            raise GraphFormatError(f"line {lineno}: expected 'u v', got {raw!r}")
        a, b = parts
        if a == b:
            raise GraphFormatError(f"line {lineno}: self-loop at {a!r}")
        u = ids.setdefault(a, len(ids))
        v = ids.setdefault(b, len(ids))
        key = (min(u, v), max(u, v))
        if key in seen:
            dupes += 1
            continue
        seen.add(key)
    if dupes:
        log.warning("dropped %d parallel edge(s)", dupes)
    labels = [None] * len(ids)
    for lab, i in ids.items():
        labels[i] = lab
    return Graph(len(ids), sorted(seen)), labels, dupes


def format_edge_list(g: Graph, header: Sequence[str] = ()) -> str:
    """Inverse of :func:`parse_edge_list` that preserves vertex ids.

    When first-seen order of the edges would not reproduce ``0..n-1`` (or a
    vertex is isolated) every vertex is declared up front on its own line.
    """
    edges = g.edges()
    order: dict[int, None] = {}
    for u, v in edges:
        order.setdefault(u)
        order.setdefault(v)
    lines = [f"# {h}" for h in header]
    if list(order) != list(range(g.n)):
        lines += [str(v) for v in range(g.n)]
    lines += [f"{u} {v}" for u, v in edges]
    return "\n".join(lines) + "\n"
