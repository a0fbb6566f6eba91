"""Ladders, weak ladders and the extraction of prescribed even cycles from them.

A ladder with rungs ``(a[i], b[i])`` needs every edge ``a[i] b[j]`` with
``|i - j| <= 1``.  Its first ``j`` rungs carry a Hamilton path from ``a[0]``
to ``b[0]``, so any block of ``m >= 2`` consecutive rungs closes into a
``2m``-cycle.  In a weak ladder the two first rungs are joined by
connector paths; taking the ``j`` rungs of one ladder and ``j'`` rungs of the
other that sit next to the connectors gives a cycle of length
``2(j + j' + k)``.  All leftover cycles are cut from the far ends.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Union

from .errors import DefectError, PreconditionError
from .graph import Graph, bits, is_cycle, is_path

DEFAULT_LADDER_BUDGET = 100_000
EXHAUSTIVE_LADDER_VERTICES = 16


@dataclass(frozen=True)
class TargetPartition:
    """Multiset of half-lengths; target ``m`` asks for a ``2m``-cycle."""
    targets: tuple[int, ...]

    def __post_init__(self):
        ts = tuple(sorted(int(x) for x in self.targets))
        if not ts:
            raise PreconditionError("empty target partition")
        if ts[0] < 2:
            raise PreconditionError("every target must be at least 2")
        object.__setattr__(self, "targets", ts)

    @classmethod
    def of(cls, values: Iterable[int]) -> "TargetPartition":
        return cls(tuple(values))

    @classmethod
    def parse(cls, text: str) -> "TargetPartition":
        try:
            return cls(tuple(int(x) for x in text.replace(" ", "").split(",") if x))
        except ValueError as exc:
            raise PreconditionError(f"bad target list {text!r}") from exc

    @property
    def total(self) -> int:
        return sum(self.targets)

    def __len__(self) -> int:
        return len(self.targets)


def partitions(total: int, smallest: int = 2) -> list[TargetPartition]:
    """Every partition of ``total`` into parts ``>= smallest``, in lexicographic order."""
    out: list[TargetPartition] = []

    def rec(left: int, lo: int, acc: list[int]):
        if left == 0:
            out.append(TargetPartition(tuple(acc)))
            return
        for part in range(lo, left + 1):
            if left - part == 0 or left - part >= part:
                acc.append(part)
                rec(left - part, part, acc)
                acc.pop()

    if total >= smallest:
        rec(total, smallest, [])
    return out


@dataclass(frozen=True)
class CyclePacking:
    """Vertex-disjoint cycles; ``cycles[i]`` has length ``2 * targets[i]``."""
    targets: tuple[int, ...]
    cycles: tuple[tuple[int, ...], ...]

    def to_json(self) -> dict:
        return {"cycles": [list(c) for c in self.cycles]}


def validate_packing(g: Graph, targets: Sequence[int], cycles: Sequence[Sequence[int]]) -> bool:
    if len(targets) != len(cycles):
        return False
    seen = 0
    for m, c in zip(targets, cycles):
        if len(c) != 2 * m or not is_cycle(g, c):
            return False
        for v in c:
            if (seen >> v) & 1:
                return False
            seen |= 1 << v
    return True


def make_packing(g: Graph, t: TargetPartition, placed: dict[int, Sequence[int]]) -> CyclePacking:
    """Assemble a packing from ``{target index: cycle}`` and check it."""
    if sorted(placed) != list(range(len(t))):
        raise DefectError(f"targets left unplaced: {sorted(set(range(len(t))) - set(placed))}")
    cycles = tuple(tuple(placed[i]) for i in range(len(t)))
    if not validate_packing(g, t.targets, cycles):
        raise DefectError("extracted cycles do not form a valid packing")
    return CyclePacking(t.targets, cycles)


@dataclass(frozen=True)
class Ladder:
    host: Graph = field(repr=False, compare=False)
    a: tuple[int, ...]
    b: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(self.a))
        object.__setattr__(self, "b", tuple(self.b))
        if len(self.a) != len(self.b):
            raise DefectError("ladder sides differ in length")
        if len(set(self.a + self.b)) != 2 * len(self.a):
            raise DefectError("ladder vertices repeat")
        g, n = self.host, len(self.a)
        for i in range(n):
            for j in (i - 1, i, i + 1):
                if 0 <= j < n and not g.has_edge(self.a[i], self.b[j]):
                    raise DefectError(f"ladder misses edge a{i + 1} b{j + 1}")

    @property
    def n(self) -> int:
        return len(self.a)

    @property
    def mask(self) -> int:
        m = 0
        for v in self.a + self.b:
            m |= 1 << v
        return m

    def rungs(self) -> list[tuple[int, int]]:
        return list(zip(self.a, self.b))

    def sub(self, start: int, stop: int) -> "Ladder":
        return Ladder(self.host, self.a[start:stop], self.b[start:stop])

    def reversed(self) -> "Ladder":
        return Ladder(self.host, self.a[::-1], self.b[::-1])

    def swapped(self) -> "Ladder":
        return Ladder(self.host, self.b, self.a)

    def hampath(self, j: int) -> list[int]:
        """Hamilton path of the first ``j`` rungs, from ``a[0]`` to ``b[0]``."""
        if not 1 <= j <= self.n:
            raise PreconditionError(f"need 1 <= j <= {self.n}")
        zig1 = [self.a[i] if i % 2 == 0 else self.b[i] for i in range(j)]
        zig2 = [self.b[i] if i % 2 == 0 else self.a[i] for i in range(j)]
        return zig1 + zig2[::-1]

    def block_cycle(self, start: int, m: int) -> list[int]:
        """The ``2m``-cycle on rungs ``start .. start+m-1`` (0-based)."""
        if m < 2 or start < 0 or start + m > self.n:
            raise PreconditionError("block out of range")
        return self.sub(start, start + m).hampath(m)

    def to_json(self) -> dict:
        return {"rungs": [[a, b] for a, b in self.rungs()]}


@dataclass(frozen=True)
class WeakLadder:
    """Two ladders whose first rungs are joined by ``p1`` (a-ends) and ``p2`` (b-ends).

    ``l1`` is the shorter ladder.  ``p1``/``p2`` list every vertex including
    the ends; together their interiors hold ``2k`` vertices.  A plain
    ladder is the case ``k = 0`` with ``l2`` empty.
    """
    l1: Ladder
    l2: Ladder
    p1: tuple[int, ...]
    p2: tuple[int, ...]
    k: int

    def __post_init__(self):
        g = self.l1.host
        if self.l2.n == 0:
            if self.k != 0 or self.p1 or self.p2:
                raise DefectError("a single ladder carries no connectors")
            return
        if self.l1.n == 0 or self.l1.n > self.l2.n:
            raise DefectError("l1 must be the nonempty shorter ladder")
        p1, p2 = tuple(self.p1), tuple(self.p2)
        object.__setattr__(self, "p1", p1)
        object.__setattr__(self, "p2", p2)
        if (p1[0], p1[-1]) != (self.l1.a[0], self.l2.a[0]) or (p2[0], p2[-1]) != (self.l1.b[0], self.l2.b[0]):
            raise DefectError("connectors must join the first rungs")
        if not is_path(g, p1) or not is_path(g, p2):
            raise DefectError("connector is not a path of the host")
        inner = p1[1:-1] + p2[1:-1]
        if len(inner) != 2 * self.k:
            raise DefectError(f"connector interiors hold {len(inner)} != 2k vertices")
        used = set(self.l1.a + self.l1.b + self.l2.a + self.l2.b)
        if len(used) != 2 * (self.l1.n + self.l2.n) or len(set(inner)) != len(inner) or used & set(inner):
            raise DefectError("weak ladder parts overlap")

    @classmethod
    def make(cls, l1: Ladder, l2: Ladder, p1: Sequence[int], p2: Sequence[int], k: int) -> "WeakLadder":
        """Build with the shorter ladder first; ties go to the smaller first-rung id."""
        if l2.n and (l1.n > l2.n or (l1.n == l2.n and min(l1.a[0], l1.b[0]) > min(l2.a[0], l2.b[0]))):
            l1, l2, p1, p2 = l2, l1, tuple(p1)[::-1], tuple(p2)[::-1]
        return cls(l1, l2, tuple(p1), tuple(p2), k)

    @classmethod
    def plain(cls, lad: Ladder) -> "WeakLadder":
        return cls(lad, Ladder(lad.host, (), ()), (), (), 0)

    @property
    def host(self) -> Graph:
        return self.l1.host

    @property
    def n_total(self) -> int:
        return self.l1.n + self.l2.n

    def cycle(self, j: int, jp: int) -> list[int]:
        """Cycle through the first ``j`` rungs of l1 and first ``jp`` of l2; length 2(j+jp+k)."""
        left = self.l1.hampath(j)
        right = self.l2.hampath(jp)[::-1]
        return left + list(self.p2[1:-1]) + right + list(self.p1[1:-1])[::-1]

    def trimmed(self, keep1: int, keep2: int) -> "WeakLadder":
        """Keep the connector-side ``keep1``/``keep2`` rungs of each ladder."""
        return WeakLadder.make(self.l1.sub(0, keep1), self.l2.sub(0, keep2), self.p1, self.p2, self.k)

    def to_json(self) -> dict:
        return {"l1": self.l1.to_json(), "l2": self.l2.to_json(),
                "p1": list(self.p1), "p2": list(self.p2), "k": self.k}


@dataclass(frozen=True)
class NearBisection:
    """Two targets splitting the total almost evenly; the reserve argument cannot place them."""
    n1: int
    n2: int
    r: int

    def to_json(self) -> dict:
        return {"verdict": "near_bisection", "n1": self.n1, "n2": self.n2, "r": self.r}


def _fill_from_far_end(lad: Ladder, items: Sequence[tuple[int, int]], placed: dict[int, list[int]]) -> None:
    """Pack ``(index, m)`` items into consecutive blocks starting at the far rung."""
    need = sum(m for _, m in items)
    if need > lad.n:
        raise DefectError(f"{need} rungs needed, ladder has {lad.n}")
    pos = lad.n - need
    for idx, m in items:
        placed[idx] = lad.block_cycle(pos, m)
        pos += m


def cycles_from_ladder(lad: Ladder, t: TargetPartition) -> CyclePacking:
    if t.total > lad.n:
        raise PreconditionError(f"targets need {t.total} rungs, ladder has {lad.n}")
    placed: dict[int, list[int]] = {}
    pos = 0
    for idx, m in enumerate(t.targets):
        placed[idx] = lad.block_cycle(pos, m)
        pos += m
    return make_packing(lad.host, t, placed)


def _closest_subset_sum(items: Sequence[tuple[int, int]], cap: int) -> list[tuple[int, int]]:
    """Subset with the largest sum not exceeding ``cap`` (exact subset-sum DP)."""
    best: dict[int, tuple[int, ...]] = {0: ()}
    for pos, (_, m) in enumerate(items):
        for s, chosen in sorted(best.items(), reverse=True):
            if s + m <= cap and s + m not in best:
                best[s + m] = chosen + (pos,)
    top = max(best)
    return [items[p] for p in best[top]]


def _weak_ladder_cycles(w: WeakLadder, items: list[tuple[int, int]], placed: dict[int, list[int]]) -> None:
    """Place ``items`` given ``w.n_total >= sum + w.k`` (the weak-ladder criterion)."""
    if not items:
        return
    if w.l2.n == 0:
        _fill_from_far_end(w.l1, items, placed)
        return
    a1, a2, k = w.l1.n, w.l2.n, w.k
    # the maximising subset may reach a1 exactly: then t = 0 and everything else fits in l2
    inner = _closest_subset_sum(items, a1)
    inner_ids = {idx for idx, _ in inner}
    rest = [it for it in items if it[0] not in inner_ids]
    t = a1 - sum(m for _, m in inner)
    _fill_from_far_end(w.l1, inner, placed)
    if t <= k or not rest:
        _fill_from_far_end(w.l2, rest, placed)
        return
    idx, y = min(rest, key=lambda it: (it[1], it[0]))
    rest = [it for it in rest if it[0] != idx]
    if y <= k + t + 1:
        j, jp = y - k - 1, 1
    else:
        j, jp = t, y - k - t
    placed[idx] = w.cycle(j, jp)
    _fill_from_far_end(w.l2.sub(jp, a2), rest, placed)


def cycles_from_weak_ladder(w: WeakLadder, t: TargetPartition) -> CyclePacking:
    if w.n_total < t.total + w.k:
        raise PreconditionError(f"need n' >= n + k, got {w.n_total} < {t.total} + {w.k}")
    placed: dict[int, list[int]] = {}
    _weak_ladder_cycles(w, list(enumerate(t.targets)), placed)
    return make_packing(w.host, t, placed)


def _single_cycle(w: WeakLadder, y: int) -> tuple[list[int], int]:
    """A ``2y``-cycle using as few l2 rungs as possible; returns it and the l2 rungs used."""
    need = y - w.k
    jp = max(1, need - w.l1.n)
    j = need - jp
    if j < 1 or jp > w.l2.n:
        raise DefectError(f"no {2 * y}-cycle in a ({w.l1.n}+{w.l2.n},{w.k}) weak ladder")
    return w.cycle(j, jp), jp


def cycles_from_weak_ladder_k1(w: WeakLadder, t: TargetPartition) -> CyclePacking:
    if w.k != 1:
        raise PreconditionError("needs a weak ladder with k = 1")
    if w.n_total != t.total:
        raise PreconditionError(f"needs n' = n, got {w.n_total} != {t.total}")
    if max(t.targets) <= 2:
        raise PreconditionError("needs some target larger than 2")
    placed: dict[int, list[int]] = {}
    items = list(enumerate(t.targets))
    cur = w
    while True:
        if len(items) == 1:
            idx, _ = items[0]
            # one rung is left out so that j + j' + 1 = n
            placed[idx] = cur.cycle(cur.l1.n, cur.l2.n - 1)
            break
        a1, a2 = cur.l1.n, cur.l2.n
        idx, m = items[0]
        if m == a2:
            (i2, m2), = items[1:]
            if m2 != a1:
                raise DefectError("peeling left mismatched ladders")
            placed[idx] = cur.l2.block_cycle(0, m)
            placed[i2] = cur.l1.block_cycle(0, m2)
            break
        if m > a2 - 1:
            raise DefectError("smallest target exceeds the longer ladder")
        placed[idx] = cur.l2.block_cycle(a2 - m, m)
        cur = cur.trimmed(a1, a2 - m)
        items = items[1:]
    return make_packing(w.host, t, placed)


def _subset_in_window(items: Sequence[tuple[int, int]], lo: int, hi: int) -> Optional[list[tuple[int, int]]]:
    """Some subset whose sum lies in ``[lo, hi]``, preferring the smallest such sum."""
    best: dict[int, tuple[int, ...]] = {0: ()}
    for pos, (_, m) in enumerate(items):
        for s, chosen in sorted(best.items(), reverse=True):
            if s + m <= hi and s + m not in best:
                best[s + m] = chosen + (pos,)
    ok = [s for s in best if lo <= s <= hi]
    if not ok:
        return None
    return [items[p] for p in best[min(ok)]]


def cycles_from_weak_ladder_with_reserve(w: WeakLadder, reserve: Ladder, t: TargetPartition,
                                         r: int) -> Union[CyclePacking, NearBisection]:
    """Use a spare ladder of ``>= n/3`` rungs to absorb small targets.

    When every case fails the targets are two near-halves of the total, and
    that verdict is returned instead of a packing.
    """
    n, k = t.total, w.k
    if r not in (1, 2):
        raise PreconditionError("r must be 1 or 2")
    if k < r:
        raise PreconditionError(f"needs k >= r, got k={k}, r={r}")
    if w.n_total < n - r:
        raise PreconditionError(f"needs n' >= n - r, got {w.n_total} < {n} - {r}")
    if n < 6 * k + 12:
        raise PreconditionError(f"needs n >= 6k + 12, got {n} < {6 * k + 12}")
    if 3 * reserve.n < n:
        raise PreconditionError(f"reserve ladder needs >= n/3 rungs, has {reserve.n}")
    if reserve.mask & (w.l1.mask | w.l2.mask | _connector_mask(w)):
        raise PreconditionError("reserve ladder meets the weak ladder")
    g = w.host
    items = list(enumerate(t.targets))
    placed: dict[int, list[int]] = {}

    spare = _subset_in_window(items, k + r, n // 3)
    if spare is not None:
        _fill_from_far_end(reserve, spare, placed)
        ids = {i for i, _ in spare}
        _weak_ladder_cycles(w, [it for it in items if it[0] not in ids], placed)
        return make_packing(g, t, placed)

    small = [it for it in items if it[1] <= k + r - 1]
    big = [it for it in items if it[1] > k + r - 1]
    if sum(m for _, m in small) * 3 > n or len(big) >= 3 or not big:
        raise DefectError("small-target mass or big-target count contradicts the window search")
    _fill_from_far_end(reserve, small, placed)
    a1, a2 = w.l1.n, w.l2.n
    if len(big) == 1:
        idx, y = big[0]
        placed[idx], _ = _single_cycle(w, y)
        return make_packing(g, t, placed)

    for (i1, y1), (i2, y2) in (big, big[::-1]):
        if y1 <= a2 - 1:
            placed[i1] = w.l2.block_cycle(a2 - y1, y1)
            placed[i2], _ = _single_cycle(w.trimmed(a1, a2 - y1), y2)
            return make_packing(g, t, placed)
        if y1 >= a1 + 1 + r:
            placed[i1], used = _single_cycle(w, y1)
            _fill_from_far_end(w.l2.sub(used, a2), [(i2, y2)], placed)
            return make_packing(g, t, placed)
    (i1, y1), (i2, y2) = big
    for (ia, ya), (ib, yb) in (((i1, y1), (i2, y2)), ((i2, y2), (i1, y1))):
        if ya <= a1 and yb <= a2:
            placed[ia] = w.l1.block_cycle(a1 - ya, ya)
            placed[ib] = w.l2.block_cycle(a2 - yb, yb)
            return make_packing(g, t, placed)
    n1, n2 = sorted((y1, y2))
    if small or not ((n + 1 - r) // 2 <= n1 and 2 * n1 <= n <= 2 * n2 and n2 <= -(-(n + r - 1) // 2)):
        raise DefectError(f"unplaced targets {n1},{n2} fall outside the near-bisection window")
    return NearBisection(n1, n2, r)


def _connector_mask(w: WeakLadder) -> int:
    m = 0
    for v in w.p1[1:-1] + w.p2[1:-1]:
        m |= 1 << v
    return m


# -- searching a host for a ladder ------------------------------------------

def find_ladder(g: Graph, min_rungs: int, budget: int | None = None) -> Optional[Ladder]:
    """A ladder with ``min_rungs`` rungs, or None.

    Complete search when ``2 * min_rungs <= 16``; beyond that the extension
    search stops after ``budget`` steps and None proves nothing.
    """
    if min_rungs <= 0:
        return Ladder(g, (), ())
    exhaustive = 2 * min_rungs <= EXHAUSTIVE_LADDER_VERTICES
    limit = None if exhaustive else (budget or DEFAULT_LADDER_BUDGET)
    steps = 0
    a: list[int] = []
    b: list[int] = []

    def extend(used: int) -> bool:
        nonlocal steps
        if len(a) == min_rungs:
            return True
        steps += 1
        if limit is not None and steps > limit:
            raise _OutOfBudget
        pa, pb = a[-1], b[-1]
        for x in bits(g.adj[pb] & ~used):
            for y in bits(g.adj[pa] & g.adj[x] & ~used & ~(1 << x)):
                a.append(x)
                b.append(y)
                if extend(used | (1 << x) | (1 << y)):
                    return True
                a.pop()
                b.pop()
        return False

    try:
        for u, v in g.edges():
            for x, y in ((u, v), (v, u)):
                a[:], b[:] = [x], [y]
                if extend((1 << x) | (1 << y)):
                    return Ladder(g, tuple(a), tuple(b))
    except _OutOfBudget:
        return None
    return None


class _OutOfBudget(Exception):
    pass


# -- synthetic hosts ---------------------------------------------------------

def ladder_graph(n: int) -> tuple[Graph, Ladder]:
    """``L_n`` alone, with ``a_i = 2i`` and ``b_i = 2i + 1``."""
    edges = []
    for i in range(n):
        for j in (i - 1, i, i + 1):
            if 0 <= j < n:
                edges.append((2 * i, 2 * j + 1))
    g = Graph(2 * n, edges)
    return g, Ladder(g, tuple(range(0, 2 * n, 2)), tuple(range(1, 2 * n, 2)))


def weak_ladder_graph(n1: int, n2: int, k1: int, k2: int,
                      rng: random.Random | None = None) -> tuple[Graph, WeakLadder]:
    """Host consisting of exactly an ``(n1+n2, (k1+k2)/2)`` weak ladder.

    ``k1``/``k2`` are the interior sizes of the two connectors.  With an
    ``rng`` the vertex ids are shuffled.
    """
    if (k1 + k2) % 2 or n1 < 1 or n2 < 1 or k1 < 0 or k2 < 0:
        raise PreconditionError("connector interiors must total an even count; ladders nonempty")
    total = 2 * (n1 + n2) + k1 + k2
    ids = list(range(total))
    if rng is not None:
        rng.shuffle(ids)
    it = iter(ids)
    a1 = [next(it) for _ in range(n1)]
    b1 = [next(it) for _ in range(n1)]
    a2 = [next(it) for _ in range(n2)]
    b2 = [next(it) for _ in range(n2)]
    p1 = [a1[0]] + [next(it) for _ in range(k1)] + [a2[0]]
    p2 = [b1[0]] + [next(it) for _ in range(k2)] + [b2[0]]
    edges = set()
    for a, b in ((a1, b1), (a2, b2)):
        for i in range(len(a)):
            for j in (i - 1, i, i + 1):
                if 0 <= j < len(a):
                    edges.add(frozenset((a[i], b[j])))
    for p in (p1, p2):
        edges.update(frozenset(e) for e in zip(p, p[1:]))
    g = Graph(total, [tuple(e) for e in edges])
    w = WeakLadder.make(Ladder(g, a1, b1), Ladder(g, a2, b2), p1, p2, (k1 + k2) // 2)
    return g, w


def weak_ladder_with_reserve_graph(n1: int, n2: int, k1: int, k2: int, m: int,
                                   rng: random.Random | None = None) -> tuple[Graph, WeakLadder, Ladder]:
    """A weak ladder host plus a disjoint ``L_m`` numbered after it."""
    g1, w = weak_ladder_graph(n1, n2, k1, k2, rng)
    g2, _ = ladder_graph(m)
    g = Graph(g1.n + g2.n, g1.edges() + [(u + g1.n, v + g1.n) for u, v in g2.edges()])
    w = WeakLadder.make(Ladder(g, w.l1.a, w.l1.b), Ladder(g, w.l2.a, w.l2.b), w.p1, w.p2, w.k)
    reserve = Ladder(g, tuple(g1.n + 2 * i for i in range(m)), tuple(g1.n + 2 * i + 1 for i in range(m)))
    return g, w, reserve
