"""Disjoint connecting paths and the long-path trichotomy for components."""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable, Optional, Union

from .errors import DefectError, Inconclusive, PreconditionError
from .graph import Graph, Path, bits, is_path, min_degree, reach, to_mask
from .hamilton import longest_path

EXACT_TRICHOTOMY_CAP = 18


class _FlowNet:
    """Residual network for successive-shortest-path min-cost flow."""

    def __init__(self, size: int):
        self.head: list[list[int]] = [[] for _ in range(size)]
        self.to: list[int] = []
        self.cap: list[int] = []
        self.cost: list[int] = []

    def add(self, a: int, b: int, cap: int, cost: int) -> None:
        self.head[a].append(len(self.to))
        self.to += [b]
        self.cap += [cap]
        self.cost += [cost]
        self.head[b].append(len(self.to))
        self.to += [a]
        self.cap += [0]
        self.cost += [-cost]

    def min_cost_flow(self, s: int, t: int, want: int) -> tuple[int, int]:
        size = len(self.head)
        pot = [0] * size
        flow = cost = 0
        while flow < want:
            dist = [None] * size
            via = [-1] * size
            dist[s] = 0
            heap = [(0, s)]
            while heap:
                d, a = heapq.heappop(heap)
                if d != dist[a]:
                    continue
                for e in self.head[a]:
                    if self.cap[e] <= 0:
                        continue
                    b = self.to[e]
                    nd = d + self.cost[e] + pot[a] - pot[b]
                    if dist[b] is None or nd < dist[b]:
                        dist[b] = nd
                        via[b] = e
                        heapq.heappush(heap, (nd, b))
            if dist[t] is None:
                break
            for v in range(size):
                if dist[v] is not None:
                    pot[v] += dist[v]
            v = t
            while v != s:
                e = via[v]
                self.cap[e] -= 1
                self.cap[e ^ 1] += 1
                cost += self.cost[e]
                v = self.to[e ^ 1]
            flow += 1
        return flow, cost


def two_disjoint_paths(g: Graph, u1: Iterable[int], u2: Iterable[int]) -> Optional[tuple[Path, Path]]:
    """Two vertex-disjoint U1-U2 paths of minimum total vertex count.

    Min-cost flow of value 2 on the vertex-split digraph where every vertex
    costs 1.  Returns None when no disjoint pair exists.
    """
    s1, s2 = frozenset(u1), frozenset(u2)
    if s1 & s2:
        raise PreconditionError("terminal sets must be disjoint")
    if len(s1) < 2 or len(s2) < 2:
        raise PreconditionError("each terminal set needs at least two vertices")
    if any(not 0 <= v < g.n for v in s1 | s2):
        raise PreconditionError("terminal outside the graph")
    n = g.n
    src, snk = 2 * n, 2 * n + 1
    net = _FlowNet(2 * n + 2)
    for v in range(n):
        net.add(2 * v, 2 * v + 1, 1, 1)
    for u, v in g.edges():
        net.add(2 * u + 1, 2 * v, 1, 0)
        net.add(2 * v + 1, 2 * u, 1, 0)
    for v in sorted(s1):
        net.add(src, 2 * v, 1, 0)
    for v in sorted(s2):
        net.add(2 * v + 1, snk, 1, 0)
    flow, _ = net.min_cost_flow(src, snk, 2)
    if flow < 2:
        return None

    def used_out(node: int) -> list[int]:
        return [net.to[e] for e in net.head[node] if e % 2 == 0 and net.cap[e] == 0]

    paths = []
    for first in used_out(src):
        path = []
        node = first
        while node != snk:
            v = node // 2
            path.append(v)
            (nxt,) = used_out(2 * v + 1)
            node = nxt
        paths.append(tuple(path))
    paths.sort(key=lambda p: (len(p), p))
    p1, p2 = paths
    if not (is_path(g, p1) and is_path(g, p2)) or set(p1) & set(p2):
        raise DefectError("flow decomposition produced invalid paths")
    return p1, p2


@dataclass(frozen=True)
class HamPath:
    path: Path


@dataclass(frozen=True)
class DominatingPath:
    """Every vertex of the component off ``path`` has all neighbours on it."""
    path: Path


@dataclass(frozen=True)
class TwoLongPaths:
    first: Path
    second: Path


Trichotomy = Union[HamPath, DominatingPath, TwoLongPaths]


def validate_trichotomy(g: Graph, component: Iterable[int], witness: Trichotomy) -> bool:
    comp = to_mask(component)
    if isinstance(witness, HamPath):
        return is_path(g, witness.path) and to_mask(witness.path) == comp
    if isinstance(witness, DominatingPath):
        p = to_mask(witness.path)
        if not is_path(g, witness.path) or p & ~comp:
            return False
        return all(not (g.adj[v] & ~p) for v in bits(comp & ~p))
    p1, p2 = witness.first, witness.second
    return (is_path(g, p1) and is_path(g, p2) and not set(p1) & set(p2)
            and not (to_mask(p1) | to_mask(p2)) & ~comp
            and len(p1) + len(p2) > 3 * min_degree(g))


def path_trichotomy(g: Graph, component: Iterable[int]) -> Trichotomy:
    """Hamilton path, a dominating path, or two disjoint paths with > 3*delta vertices.

    Witnesses are tried in that order, using a longest path of the component
    (exact up to ``EXACT_TRICHOTOMY_CAP`` vertices, branch-and-bound with a
    node budget beyond, in which case a failed bound raises Inconclusive).
    """
    comp = to_mask(component)
    if not comp:
        raise PreconditionError("empty component")
    root = (comp & -comp).bit_length() - 1
    if reach(g, root, g.full) != comp:
        raise PreconditionError("vertex set is not a connected component")
    delta = min_degree(g)
    size = comp.bit_count()
    exact = size <= EXACT_TRICHOTOMY_CAP
    budget = None if exact else 200_000
    p1, done1 = longest_path(g, comp, node_budget=budget)
    if len(p1) == size:
        return HamPath(tuple(p1))
    # the size hypothesis only matters once no Hamilton path is available
    if size < 2 * delta:
        raise PreconditionError(f"component has {size} < 2*delta = {2 * delta} vertices")
    rest = comp & ~to_mask(p1)
    if all(not (g.adj[v] & rest) for v in bits(rest)):
        return DominatingPath(tuple(p1))
    p2, _ = longest_path(g, rest, node_budget=budget)
    witness = TwoLongPaths(tuple(p1), tuple(p2))
    if len(p1) + len(p2) > 3 * delta:
        return witness
    if exact and done1:
        raise DefectError("longest path neither dominates nor pairs with a long second path")
    raise Inconclusive("heuristic longest path too short to certify the trichotomy")
