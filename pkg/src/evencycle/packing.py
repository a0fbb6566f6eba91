"""Exhaustive cycle-packing oracle, cycle spectra and beta-extremal detection."""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterator, Optional, Union

from .errors import DefectError, PreconditionError
from .graph import Graph, bits, min_degree, to_mask
from .ladders import CyclePacking, TargetPartition, make_packing

PACK_CAP = 16
SPECTRUM_CAP = 14
EXTREMAL_CAP = 14


@dataclass(frozen=True)
class Infeasible:
    """The oracle searched everything; no packing exists."""
    targets: tuple[int, ...]

    def to_json(self) -> dict:
        return {"targets": list(self.targets)}


@dataclass(frozen=True)
class OverCap:
    n: int
    cap: int

    def to_json(self) -> dict:
        return {"n": self.n, "cap": self.cap}


OracleResult = Union[CyclePacking, Infeasible, OverCap]


def as_fraction(x) -> Fraction:
    """Exact rational from an int, Fraction, decimal string or float (read as its decimal text)."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        return Fraction(repr(x))
    return Fraction(x)


def cycles_of_length(g: Graph, length: int, free: int, min_start: int = 0) -> Iterator[list[int]]:
    """Every cycle of ``length`` inside ``free`` exactly once.

    A cycle is listed from its smallest vertex ``s`` with the second vertex
    smaller than the last, and only when ``s >= min_start``.
    """
    adj = g.adj
    for s in bits(free):
        if s < min_start:
            continue
        allowed = free & ~((1 << (s + 1)) - 1)
        if allowed.bit_count() < length - 1:
            break
        closing = adj[s] & allowed
        if closing.bit_count() < 2:
            continue
        path = [s]

        def dfs(v: int, mask: int) -> Iterator[list[int]]:
            depth = len(path)
            if depth == length:
                if (adj[v] >> s) & 1 and path[1] < path[-1]:
                    yield list(path)
                return
            nxt = adj[v] & allowed & ~mask
            if depth == length - 1:
                nxt &= closing
            for w in bits(nxt):
                path.append(w)
                yield from dfs(w, mask | (1 << w))
                path.pop()

        yield from dfs(s, 1 << s)


def oracle_pack(g: Graph, t: TargetPartition, cap: int = PACK_CAP) -> OracleResult:
    """Complete backtracking search for vertex-disjoint cycles of lengths ``2 t_i``.

    Targets are placed largest first.  Equal targets are placed with
    increasing smallest vertex, and failed (used set, position) states are
    remembered, so each packing is explored once.
    """
    if g.n > cap:
        return OverCap(g.n, cap)
    order = sorted(range(len(t)), key=lambda i: -t.targets[i])
    lengths = [2 * t.targets[i] for i in order]
    suffix = [sum(lengths[i:]) for i in range(len(lengths) + 1)]
    failed: set[tuple[int, int, int]] = set()
    chosen: list[list[int]] = []

    def place(pos: int, used: int, min_start: int) -> bool:
        if pos == len(lengths):
            return True
        free = g.full & ~used
        if free.bit_count() < suffix[pos]:
            return False
        key = (pos, used, min_start)
        if key in failed:
            return False
        length = lengths[pos]
        for cyc in cycles_of_length(g, length, free, min_start):
            chosen.append(cyc)
            nxt_min = cyc[0] + 1 if pos + 1 < len(lengths) and lengths[pos + 1] == length else 0
            if place(pos + 1, used | to_mask(cyc), nxt_min):
                return True
            chosen.pop()
        failed.add(key)
        return False

    if not place(0, 0, 0):
        return Infeasible(t.targets)
    placed = {i: chosen[p] for p, i in enumerate(order)}
    return make_packing(g, t, placed)


# -- spectrum ----------------------------------------------------------------

@dataclass(frozen=True)
class Spectrum:
    even_lengths: frozenset
    odd_lengths: frozenset
    complete: bool = True

    def to_json(self) -> dict:
        return {"even": sorted(self.even_lengths), "odd": sorted(self.odd_lengths),
                "complete": self.complete}


def has_cycle_of_length(g: Graph, length: int, budget: int | None = None) -> Optional[bool]:
    """True/False, or None when the DFS budget ran out first."""
    adj = g.adj
    steps = 0

    class _Stop(Exception):
        pass

    for s in range(g.n):
        allowed = g.full & ~((1 << (s + 1)) - 1)
        if allowed.bit_count() < length - 1:
            break
        closing = adj[s] & allowed
        if closing.bit_count() < 2:
            continue
        dead: set[tuple[int, int]] = set()

        def dfs(v: int, mask: int, depth: int) -> bool:
            nonlocal steps
            steps += 1
            if budget is not None and steps > budget:
                raise _Stop
            if depth == length:
                return bool((adj[v] >> s) & 1)
            if (mask, v) in dead:
                return False
            nxt = adj[v] & allowed & ~mask
            if depth == length - 1:
                nxt &= closing
            for w in bits(nxt):
                if dfs(w, mask | (1 << w), depth + 1):
                    return True
            dead.add((mask, v))
            return False

        try:
            if dfs(s, 1 << s, 1):
                return True
        except _Stop:
            return None
    return False


def spectrum(g: Graph, cap: int = SPECTRUM_CAP, budget: int = 200_000) -> Spectrum:
    """Cycle lengths of ``g``, split by parity.

    Each length is decided by its own DFS that stops at the first cycle.
    Beyond ``cap`` vertices every search is budgeted and an exhausted budget
    clears the completeness flag.
    """
    exact = g.n <= cap
    even, odd = set(), set()
    complete = True
    for length in range(3, g.n + 1):
        found = has_cycle_of_length(g, length, None if exact else budget)
        if found is None:
            complete = False
        elif found:
            (even if length % 2 == 0 else odd).add(length)
    return Spectrum(frozenset(even), frozenset(odd), complete)


# -- beta-extremal -----------------------------------------------------------

@dataclass(frozen=True)
class BetaExtremalCert:
    """``b_set`` is nearly independent: all but ``exceptional`` have few neighbours inside."""
    beta: Fraction
    b_set: frozenset
    exceptional: frozenset

    def validate(self, g: Graph) -> bool:
        n = g.n
        beta = as_fraction(self.beta)
        bmask = to_mask(self.b_set)
        if len(self.b_set) < n - min_degree(g) - beta * n:
            return False
        heavy = {v for v in self.b_set if (g.adj[v] & bmask).bit_count() > beta * n}
        return heavy == set(self.exceptional) and len(heavy) <= 4 * beta * n

    def to_json(self) -> dict:
        return {"beta": str(self.beta), "b_set": sorted(self.b_set),
                "exceptional": sorted(self.exceptional)}


def _cert_for(g: Graph, beta: Fraction, bmask: int) -> Optional[BetaExtremalCert]:
    n = g.n
    heavy = [v for v in bits(bmask) if (g.adj[v] & bmask).bit_count() > beta * n]
    if len(heavy) > 4 * beta * n:
        return None
    return BetaExtremalCert(beta, frozenset(bits(bmask)), frozenset(heavy))


def _size_floor(g: Graph, beta: Fraction) -> int:
    bound = g.n - min_degree(g) - beta * g.n
    return max(0, -(-bound.numerator // bound.denominator))


@dataclass(frozen=True)
class ExtremalSearch:
    """Outcome of ``detect_beta_extremal``; ``proof`` means an absent cert is certain."""
    cert: Optional[BetaExtremalCert]
    proof: bool


def search_beta_extremal(g: Graph, beta, cap: int = EXTREMAL_CAP) -> ExtremalSearch:
    beta = as_fraction(beta)
    if not 0 < beta < 1:
        raise PreconditionError("beta must lie in (0, 1)")
    n = g.n
    floor = _size_floor(g, beta)
    if n <= cap:
        # the conditions only get easier for subsets of B, so the smallest size suffices
        for combo in combinations(range(n), floor):
            cert = _cert_for(g, beta, to_mask(combo))
            if cert is not None:
                return ExtremalSearch(cert, True)
        return ExtremalSearch(None, True)
    bmask = g.full
    while bmask.bit_count() >= floor:
        cert = _cert_for(g, beta, bmask)
        if cert is not None:
            return ExtremalSearch(cert, False)
        worst = max(bits(bmask), key=lambda v: ((g.adj[v] & bmask).bit_count(), -v))
        bmask &= ~(1 << worst)
    return ExtremalSearch(None, False)


def detect_beta_extremal(g: Graph, beta, cap: int = EXTREMAL_CAP) -> Optional[BetaExtremalCert]:
    """A certificate with the largest qualifying ``B`` we can find, or None."""
    found = search_beta_extremal(g, beta, cap).cert
    if found is None:
        return None
    # grow the set greedily: a larger B is more useful to the builders
    bmask = to_mask(found.b_set)
    grown = True
    while grown:
        grown = False
        for v in sorted(bits(g.full & ~bmask), key=lambda x: ((g.adj[x] & bmask).bit_count(), x)):
            cert = _cert_for(g, found.beta, bmask | (1 << v))
            if cert is not None:
                bmask |= 1 << v
                grown = True
                break
    cert = _cert_for(g, found.beta, bmask)
    if cert is None or not cert.validate(g):
        raise DefectError("beta-extremal certificate failed re-validation")
    return cert


def random_graph(n: int, p: float, rng: random.Random) -> Graph:
    return Graph(n, [(u, v) for u, v in combinations(range(n), 2) if rng.random() < p])
