"""Bipartite matchings and vertex-disjoint star packings."""
from __future__ import annotations

from itertools import combinations
from typing import Iterable, Optional

from .graph import Graph, bits, to_mask

STAR_EXHAUSTIVE_CAP = 20


def bipartite_matching(g: Graph, left: Iterable[int], right: Iterable[int]) -> dict[int, int]:
    """Maximum matching between two disjoint vertex sets (augmenting paths).

    Vertices are tried in increasing id order, so the result is deterministic.
    Returns ``{left vertex: right vertex}``.
    """
    lefts = sorted(set(left))
    rmask = to_mask(right)
    owner: dict[int, int] = {}

    def augment(u: int, seen: set[int]) -> bool:
        for w in bits(g.adj[u] & rmask):
            if w in seen:
                continue
            seen.add(w)
            if w not in owner or augment(owner[w], seen):
                owner[w] = u
                return True
        return False

    for u in lefts:
        augment(u, set())
    return {u: w for w, u in sorted(owner.items(), key=lambda kv: kv[1])}


def saturating_matching(g: Graph, left: Iterable[int], right: Iterable[int]) -> Optional[dict[int, int]]:
    """A matching covering every vertex of ``left``, or None."""
    lefts = set(left)
    m = bipartite_matching(g, lefts, right)
    return m if len(m) == len(lefts) else None


def _stars_at(g: Graph, v: int, free: int, leaves: int):
    """Stars with ``leaves`` leaves that use ``v`` (as centre or as a leaf), inside ``free``."""
    out = []
    for c in combinations(bits(g.adj[v] & free), leaves):
        out.append((v, c))
    for w in bits(g.adj[v] & free):
        others = g.adj[w] & free & ~(1 << v)
        for c in combinations(bits(others), leaves - 1):
            out.append((w, tuple(sorted((v,) + c))))
    return out


def star_packing(g: Graph, within: Iterable[int] | int, leaves: int,
                 cap: int = STAR_EXHAUSTIVE_CAP) -> list[tuple[int, tuple[int, ...]]]:
    """Maximum set of vertex-disjoint stars ``K_{1,leaves}`` inside ``within``.

    Exact branch and bound up to ``cap`` vertices, greedy beyond.  Each star
    is ``(centre, leaves)``.
    """
    free0 = within if isinstance(within, int) else to_mask(within)
    size = leaves + 1
    if free0.bit_count() > cap:
        return _greedy_stars(g, free0, leaves)
    best: list = []
    cur: list = []

    def rec(free: int) -> None:
        nonlocal best
        if len(cur) > len(best):
            best = list(cur)
        if len(cur) + free.bit_count() // size <= len(best) or not free:
            return
        v = (free & -free).bit_length() - 1
        for centre, ls in _stars_at(g, v, free, leaves):
            cur.append((centre, ls))
            rec(free & ~to_mask((centre,) + ls))
            cur.pop()
        rec(free & ~(1 << v))

    rec(free0)
    return best


def _greedy_stars(g: Graph, free: int, leaves: int):
    out = []
    while True:
        cands = [v for v in bits(free) if (g.adj[v] & free).bit_count() >= leaves]
        if not cands:
            return out
        # take the centre whose leaves are least needed elsewhere
        v = min(cands, key=lambda x: ((g.adj[x] & free).bit_count(), x))
        ls = sorted(bits(g.adj[v] & free), key=lambda x: ((g.adj[x] & free).bit_count(), x))[:leaves]
        out.append((v, tuple(sorted(ls))))
        free &= ~to_mask([v] + ls)
