"""Hamilton cycles and long paths.

``find_hamilton_cycle`` grows a path by extension, closes it with the
Dirac/Ore pigeonhole step, and re-opens the resulting cycle towards an
outside vertex.  When every graph vertex has degree at least n/2 this never
gets stuck.  Outside that regime it falls back to Posa rotations under a
budget and, for small graphs, to exhaustive search.
"""
from __future__ import annotations

import random
from typing import Optional

from .errors import PreconditionError
from .graph import Graph, articulation_points, bits, is_connected

EXHAUSTIVE_CAP = 14


def posa_check(g: Graph) -> bool:
    n = g.n
    if n < 3:
        raise PreconditionError("Posa's condition is stated for n >= 3")
    deg = sorted(g.degrees())
    k = 1
    while 2 * k < n - 1:
        if sum(1 for d in deg if d <= k) >= k:
            return False
        k += 1
    if n % 2 == 1:
        half = (n - 1) // 2
        if sum(1 for d in deg if d <= half) > half:
            return False
    return True


def _close_path(g: Graph, path: list[int]) -> Optional[list[int]]:
    """Turn a path into a cycle on the same vertices, if one pivot allows it."""
    first, last = path[0], path[-1]
    if len(path) >= 3 and g.has_edge(first, last):
        return list(path)
    adj_first, adj_last = g.adj[first], g.adj[last]
    for i in range(len(path) - 1):
        if (adj_last >> path[i]) & 1 and (adj_first >> path[i + 1]) & 1:
            return path[: i + 1] + path[: i : -1]
    return None


def _rotation_extension(g: Graph, start: int, rng: random.Random, budget: int) -> Optional[list[int]]:
    n = g.n
    path = [start]
    on = 1 << start
    steps = 0
    seen_states: set[tuple[int, int, int]] = set()
    while steps < budget:
        steps += 1
        free = g.adj[path[-1]] & ~on
        if not free:
            path.reverse()
            free = g.adj[path[-1]] & ~on
        if free:
            # Warnsdorff: prefer the outside neighbour with fewest outside neighbours
            w = min(bits(free), key=lambda x: ((g.adj[x] & ~on).bit_count(), x))
            path.append(w)
            on |= 1 << w
            continue
        cyc = _close_path(g, path)
        if cyc is not None:
            if len(cyc) == n:
                return cyc
            for idx, c in enumerate(cyc):
                out = g.adj[c] & ~on
                if out:
                    w = (out & -out).bit_length() - 1
                    path = cyc[idx + 1:] + cyc[: idx + 1] + [w]
                    on |= 1 << w
                    break
            else:
                return None  # component exhausted; graph is disconnected
            continue
        # Posa rotation at the current end
        end = path[-1]
        pivots = [i for i in range(len(path) - 2) if (g.adj[end] >> path[i]) & 1]
        if not pivots:
            return None
        i = rng.choice(pivots)
        path = path[: i + 1] + path[: i : -1]
        state = (path[0], path[-1], on)
        if state in seen_states and rng.random() < 0.5:
            path.reverse()
        seen_states.add(state)
    return None


def _exhaustive_cycle(g: Graph) -> Optional[list[int]]:
    full = g.full
    failed: set[tuple[int, int]] = set()
    path = [0]

    def dfs(v: int, mask: int) -> bool:
        if mask == full:
            return g.has_edge(v, 0)
        if (mask, v) in failed:
            return False
        rest = full & ~mask
        # vertex 0 must stay reachable at the end; every unvisited vertex needs 2 usable neighbours
        for w in bits(rest):
            if (g.adj[w] & (rest | (1 << v) | 1)).bit_count() < 2:
                failed.add((mask, v))
                return False
        for w in bits(g.adj[v] & rest):
            path.append(w)
            if dfs(w, mask | (1 << w)):
                return True
            path.pop()
        failed.add((mask, v))
        return False

    return list(path) if dfs(0, 1) else None


def find_hamilton_cycle(g: Graph, budget: int | None = None, seed: int = 0) -> Optional[list[int]]:
    """A Hamilton cycle as a vertex list, or None.

    None is a proof of absence only when ``g.n <= EXHAUSTIVE_CAP`` or the
    graph fails a necessary condition (connectivity, a cut vertex, a vertex
    of degree < 2).
    """
    n = g.n
    if n < 3:
        raise PreconditionError("Hamilton cycles need n >= 3")
    if min(g.degrees()) < 2 or not is_connected(g) or articulation_points(g):
        return None
    rng = random.Random(seed)
    if budget is None:
        budget = 40 * n * n
    for attempt in range(3):
        start = 0 if attempt == 0 else rng.randrange(n)
        cyc = _rotation_extension(g, start, rng, budget)
        if cyc is not None:
            return cyc
    if n <= EXHAUSTIVE_CAP:
        return _exhaustive_cycle(g)
    return None


def _grow_path(g: Graph, start: int, fixed_start: bool, target_end: int | None,
               rng: random.Random, budget: int) -> Optional[list[int]]:
    """Extend at the free end, rotating (Posa) when stuck; the start stays put
    when ``fixed_start``."""
    n = g.n
    path = [start]
    on = 1 << start
    for _ in range(budget):
        end = path[-1]
        free = g.adj[end] & ~on
        if target_end is not None and len(path) < n - 1:
            free &= ~(1 << target_end)  # the target end is the last vertex placed
        if not free and not fixed_start and len(path) < n:
            other = g.adj[path[0]] & ~on
            if other:
                path.reverse()
                continue
        if free:
            w = min(bits(free), key=lambda x: ((g.adj[x] & ~on).bit_count(), x))
            path.append(w)
            on |= 1 << w
            continue
        if len(path) == n and (target_end is None or end == target_end):
            return path
        pivots = [i for i in range(len(path) - 2) if (g.adj[end] >> path[i]) & 1]
        if not pivots:
            if fixed_start or len(path) < 2:
                return None
            path.reverse()
            continue
        i = rng.choice(pivots)
        path = path[: i + 1] + path[: i : -1]
    return None


def _exhaustive_path(g: Graph, start: int | None, end: int | None) -> Optional[list[int]]:
    n = g.n
    full = g.full
    failed: set[tuple[int, int]] = set()

    def dfs(path: list[int], mask: int) -> bool:
        v = path[-1]
        if mask == full:
            return end is None or v == end
        if (mask, v) in failed:
            return False
        rest = full & ~mask
        if end is not None and not (rest >> end) & 1:
            return False
        nxt = g.adj[v] & rest
        if end is not None and rest != 1 << end:
            nxt &= ~(1 << end)
        for w in bits(nxt):
            path.append(w)
            if dfs(path, mask | (1 << w)):
                return True
            path.pop()
        failed.add((mask, v))
        return False

    starts = [start] if start is not None else range(n)
    for s in starts:
        path = [s]
        if dfs(path, 1 << s):
            return path
    return None


def hamilton_path(g: Graph, start: int | None = None, end: int | None = None,
                  seed: int = 0, budget: int | None = None) -> Optional[list[int]]:
    """Hamilton path with optional fixed end vertices, or None.

    None certifies absence only for ``g.n <= EXHAUSTIVE_CAP``.
    """
    n = g.n
    if n == 0:
        return []
    if start is not None and end is not None and start == end:
        if n == 1:
            return [start]
        raise PreconditionError("path ends must differ")
    if start is None and end is not None:
        p = hamilton_path(g, end, None, seed, budget)
        return None if p is None else p[::-1]
    if not is_connected(g):
        return None
    rng = random.Random(seed)
    if budget is None:
        budget = 40 * n * n
    if start is not None:
        attempts = [start] * 3
    else:
        order = sorted(range(n), key=lambda v: (g.degree(v), v))
        attempts = order[:3]
    for s in attempts:
        p = _grow_path(g, s, start is not None, end, rng, budget)
        if p is not None:
            return p
    if n <= EXHAUSTIVE_CAP:
        return _exhaustive_path(g, start, end)
    return None


def longest_path(g: Graph, within: int | None = None, node_budget: int | None = None) -> tuple[list[int], bool]:
    """Longest path inside ``g[within]`` by branch and bound.

    Returns the path and whether the search finished (i.e. the path is
    provably longest).  The bound is the number of unvisited vertices still
    reachable from the current end.
    """
    allowed = g.full if within is None else within
    size = allowed.bit_count()
    if size == 0:
        return [], True
    best: list[int] = [(allowed & -allowed).bit_length() - 1]
    nodes = 0
    exhausted = True

    def reachable(v: int, free: int) -> int:
        seen = 0
        frontier = g.adj[v] & free
        while frontier:
            seen |= frontier
            nxt = 0
            for w in bits(frontier):
                nxt |= g.adj[w]
            frontier = nxt & free & ~seen
        return seen.bit_count()

    def dfs(path: list[int], mask: int) -> bool:
        nonlocal best, nodes, exhausted
        nodes += 1
        if node_budget is not None and nodes > node_budget:
            exhausted = False
            return True
        if len(path) > len(best):
            best = list(path)
            if len(best) == size:
                return True
        v = path[-1]
        free = allowed & ~mask
        if len(path) + reachable(v, free) <= len(best):
            return False
        nbrs = sorted(bits(g.adj[v] & free), key=lambda x: ((g.adj[x] & free).bit_count(), x))
        for w in nbrs:
            path.append(w)
            if dfs(path, mask | (1 << w)):
                return True
            path.pop()
        return False

    for s in sorted(bits(allowed), key=lambda x: ((g.adj[x] & allowed).bit_count(), x)):
        if dfs([s], 1 << s):
            break
    return best, exhausted
