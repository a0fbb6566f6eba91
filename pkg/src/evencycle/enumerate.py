"""Isomorph-free generation of small graphs.

Graphs with minimum degree at least ``d`` on ``n`` vertices are built from
those on ``n - 1`` vertices with minimum degree at least ``d - 1`` by adding
one vertex.  A child is kept only when the new vertex is a minimum-degree
vertex whose invariant (sorted neighbour degrees) is maximal, which every
isomorphism class admits, and duplicates are removed by canonical code.

The canonical code is the largest upper-triangle adjacency word over all
labelings produced by individualisation-refinement; interchangeable twins
are branched on only once.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import Iterator, Sequence

from .graph import Graph, bits


_TABLE_BITS = 12
_BITS = [tuple(bits(m)) for m in range(1 << _TABLE_BITS)]


def _members(mask: int) -> tuple[int, ...]:
    return _BITS[mask] if mask < len(_BITS) else tuple(bits(mask))


def _refine(adj: Sequence[int], cells: list[int]) -> list[int]:
    """Coarsest equitable refinement of an ordered partition (cells as bitsets).

    Every cell ever created is used once as a splitter; split parts are
    ordered by their neighbour count, which keeps the result canonical.
    """
    splitters = list(cells)
    k = 0
    while k < len(splitters):
        ref = splitters[k]
        k += 1
        new = []
        for cell in cells:
            if cell & (cell - 1) == 0:
                new.append(cell)
                continue
            groups: dict[int, int] = {}
            for v in _members(cell):
                c = (adj[v] & ref).bit_count()
                groups[c] = groups.get(c, 0) | (1 << v)
            if len(groups) == 1:
                new.append(cell)
            else:
                parts = [groups[c] for c in sorted(groups)]
                new += parts
                splitters += parts
        cells = new
        if all(c & (c - 1) == 0 for c in cells):
            break
    return cells


def _code(adj: Sequence[int], order: Sequence[int]) -> int:
    n = len(order)
    pos = [0] * n
    for i, v in enumerate(order):
        pos[v] = i
    code = 0
    for i, v in enumerate(order):
        width = n - 1 - i
        row = 0
        for w in _members(adj[v]):
            j = pos[w]
            if j > i:
                row |= 1 << (n - 1 - j)
        code = (code << width) | row
    return code


def canonical_code(adj: Sequence[int]) -> int:
    """Isomorphism-invariant integer: equal exactly for isomorphic graphs."""
    n = len(adj)
    if n == 0:
        return 0
    by_deg: dict[int, int] = {}
    for v in range(n):
        d = adj[v].bit_count()
        by_deg[d] = by_deg.get(d, 0) | (1 << v)
    start = _refine(adj, [by_deg[d] for d in sorted(by_deg)])
    best = -1
    stack = [start]
    while stack:
        cells = stack.pop()
        target = next((c for c in cells if c & (c - 1)), None)
        if target is None:
            order = [c.bit_length() - 1 for c in cells]
            code = _code(adj, order)
            if code > best:
                best = code
            continue
        idx = cells.index(target)
        tried: list[int] = []
        for v in _members(target):
            # twins (same neighbourhood up to each other) give identical branches
            if any((adj[v] & ~(1 << u)) == (adj[u] & ~(1 << v)) for u in tried):
                continue
            tried.append(v)
            nxt = cells[:idx] + [1 << v, target & ~(1 << v)] + cells[idx + 1:]
            stack.append(_refine(adj, nxt))
    return best


def canonical_graph(g: Graph) -> Graph:
    return decode(g.n, canonical_code(g.adj))


def decode(n: int, code: int) -> Graph:
    edges = []
    shift = n * (n - 1) // 2
    for i in range(n):
        for j in range(i + 1, n):
            shift -= 1
            if (code >> shift) & 1:
                edges.append((i, j))
    return Graph(n, edges)


def _accept(adj: Sequence[int], new: int) -> bool:
    """Is ``new`` a minimum-degree vertex with the largest neighbour-degree invariant?"""
    degs = [m.bit_count() for m in adj]
    dmin = min(degs)
    if degs[new] != dmin:
        return False

    def inv(v: int) -> tuple[int, ...]:
        return tuple(sorted((degs[w] for w in bits(adj[v])), reverse=True))

    mine = inv(new)
    return all(inv(v) <= mine for v in range(len(adj)) if degs[v] == dmin and v != new)


@lru_cache(maxsize=None)
def level(n: int, d: int, dmax: int | None = None) -> tuple[int, ...]:
    """Sorted canonical codes of all graphs on ``n`` vertices with ``d <= min degree <= dmax``."""
    if n <= 0:
        return (0,) if n == 0 else ()
    if n == 1:
        return (0,) if d <= 0 else ()
    if d > n - 1:
        return ()
    found: set[int] = set()
    parent_n = n - 1
    for pcode in level(parent_n, d - 1):
        p = decode(parent_n, pcode).adj
        pdeg = [m.bit_count() for m in p]
        top = min(pdeg) + 1 if dmax is None else min(min(pdeg) + 1, dmax)
        for size in range(max(d, 0), min(top, parent_n) + 1):
            # the new vertex must have minimum degree, so untouched vertices need degree >= size
            for nbrs in combinations(range(parent_n), size):
                nmask = 0
                for u in nbrs:
                    nmask |= 1 << u
                if any(pdeg[u] + ((nmask >> u) & 1) < size for u in range(parent_n)):
                    continue
                adj = [m | (((nmask >> u) & 1) << parent_n) for u, m in enumerate(p)] + [nmask]
                if not _accept(adj, parent_n):
                    continue
                found.add(canonical_code(adj))
    return tuple(sorted(found))


def graphs(n: int, min_deg: int = 0, max_min_deg: int | None = None) -> Iterator[tuple[int, Graph]]:
    """``(canonical code, graph)`` for every isomorphism class, in code order."""
    for code in level(n, min_deg, max_min_deg):
        yield code, decode(n, code)
