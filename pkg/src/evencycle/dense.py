"""Ladder constructions for dense host graphs.

All builders share one engine: the vertex set is cut into short ladder
segments (single matched rungs, 3-rung "tokens" that absorb a low-degree
vertex, a fixed prefix), an auxiliary graph joins two segments when one can
follow the other inside a ladder, and a Hamilton path of that auxiliary
graph is read back as one long ladder.  Segment orientations along the path
are fixed by a small dynamic program.  Every result is re-validated by the
``Ladder`` constructor; when a step cannot be completed at this size the
builder raises ``Inconclusive``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .errors import DefectError, Inconclusive, PreconditionError
from .graph import Graph, bits, induced_subgraph, is_bipartite, min_degree, to_mask
from .hamilton import hamilton_path
from .ladders import CyclePacking, Ladder, TargetPartition, WeakLadder, cycles_from_ladder, make_packing
from .matching import saturating_matching, star_packing
from .packing import BetaExtremalCert, as_fraction

CHAIN_SEEDS = 4


# -- segment chains ----------------------------------------------------------

@dataclass(frozen=True)
class Segment:
    a: tuple[int, ...]
    b: tuple[int, ...]
    reversible: bool = True
    swappable: bool = False

    def orientations(self) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
        out = [(self.a, self.b)]
        if self.swappable:
            out.append((self.b, self.a))
        if self.reversible:
            out += [(a[::-1], b[::-1]) for a, b in list(out)]
        seen, uniq = set(), []
        for o in out:
            if o not in seen:
                seen.add(o)
                uniq.append(o)
        return uniq

    @property
    def mask(self) -> int:
        return to_mask(self.a + self.b)


def rung(a: int, b: int, swappable: bool = False) -> Segment:
    return Segment((a,), (b,), reversible=False, swappable=swappable)


def _joins(g: Graph, left, right) -> bool:
    return g.has_edge(left[0][-1], right[1][0]) and g.has_edge(left[1][-1], right[0][0])


def chain(g: Graph, segs: Sequence[Segment], first: int | None = None, last: int | None = None) -> Ladder:
    """One ladder through every segment, starting with ``segs[first]`` and ending with ``segs[last]``."""
    m = len(segs)
    if m == 0:
        return Ladder(g, (), ())
    orients = [s.orientations() for s in segs]
    if m == 1:
        a, b = orients[0][0]
        return Ladder(g, a, b)
    h_edges = []
    for i in range(m):
        for j in range(i + 1, m):
            if any(_joins(g, x, y) or _joins(g, y, x) for x in orients[i] for y in orients[j]):
                h_edges.append((i, j))
    h = Graph(m, h_edges)
    for seed in range(CHAIN_SEEDS):
        order = hamilton_path(h, first, last, seed=seed)
        if order is None:
            break
        lad = _orient(g, order, orients)
        if lad is not None:
            return lad
    raise Inconclusive(f"no ladder through {m} segments (auxiliary Hamilton path or orientation failed)")


def _orient(g: Graph, order: Sequence[int], orients) -> Optional[Ladder]:
    layer = {o: None for o in range(len(orients[order[0]]))}
    back = [layer]
    for prev, cur in zip(order, order[1:]):
        nxt = {}
        for o in range(len(orients[cur])):
            for p in back[-1]:
                if _joins(g, orients[prev][p], orients[cur][o]):
                    nxt[o] = p
                    break
        if not nxt:
            return None
        back.append(nxt)
    pick = [min(back[-1])]
    for step in range(len(order) - 1, 0, -1):
        pick.append(back[step][pick[-1]])
    pick.reverse()
    a: tuple[int, ...] = ()
    b: tuple[int, ...] = ()
    for seg, o in zip(order, pick):
        sa, sb = orients[seg][o]
        a, b = a + sa, b + sb
    return Ladder(g, a, b)


def _halve_path(g: Graph, vertices: int) -> list[tuple[int, int]]:
    """Perfect matching of ``g[vertices]`` read off a Hamilton path."""
    if not vertices:
        return []
    sub, keep = induced_subgraph(g, bits(vertices))
    path = hamilton_path(sub)
    if path is None:
        raise Inconclusive("dense remainder has no Hamilton path to split into rungs")
    return [(keep[path[i]], keep[path[i + 1]]) for i in range(0, len(path) - 1, 2)]


# -- tau-complete graphs -----------------------------------------------------

@dataclass(frozen=True)
class TauCompleteCert:
    tau: Fraction
    major: frozenset
    minor: frozenset

    @property
    def vertices(self) -> int:
        return to_mask(self.major | self.minor)

    def validate(self, g: Graph) -> bool:
        tau = as_fraction(self.tau)
        if not 0 < tau < Fraction(1, 10) or self.major & self.minor:
            return False
        major = to_mask(self.major)
        size = len(self.major)
        n = size + len(self.minor)
        if size < (1 - tau) * n:
            return False
        if any((g.adj[v] & major).bit_count() < (1 - tau) * size for v in self.major):
            return False
        return all((g.adj[w] & major).bit_count() >= 4 * tau * size for w in self.minor)

    def to_json(self) -> dict:
        return {"tau": str(self.tau), "major": sorted(self.major), "minor": sorted(self.minor)}


def check_tau_complete(g: Graph, tau, within: Iterable[int] | None = None) -> Optional[TauCompleteCert]:
    """Certificate that ``g[within]`` is tau-complete, or None.

    The major set is peeled from the whole vertex set one vertex at a time,
    always dropping a violator with the fewest neighbours inside, until every
    remaining vertex sees a ``1 - tau`` fraction of it.
    """
    tau = as_fraction(tau)
    if not 0 < tau < Fraction(1, 10):
        raise PreconditionError("tau must lie in (0, 1/10)")
    whole = g.full if within is None else to_mask(within)
    major = whole
    while major:
        size = major.bit_count()
        bad = [v for v in bits(major) if (g.adj[v] & major).bit_count() < (1 - tau) * size]
        if not bad:
            break
        worst = min(bad, key=lambda v: ((g.adj[v] & major).bit_count(), v))
        major &= ~(1 << worst)
    cert = TauCompleteCert(tau, frozenset(bits(major)), frozenset(bits(whole & ~major)))
    return cert if major and cert.validate(g) else None


@dataclass(frozen=True)
class TauLadder:
    ladder: Optional[Ladder]
    parity: Optional[int] = None
    path: Optional[tuple[int, ...]] = None

    def to_json(self) -> dict:
        return {"ladder": self.ladder.to_json() if self.ladder else None,
                "parity": self.parity, "path": list(self.path) if self.path else None}


def _tau_body(g: Graph, cert: TauCompleteCert, avoid: int, first: tuple[int, int],
              last: Optional[tuple[int, int]], rungs: int) -> Ladder:
    whole = cert.vertices
    fixed = to_mask(first) | (to_mask(last) if last else 0)
    rest = whole & ~avoid & ~fixed
    spare = rest.bit_count() - 2 * (rungs - 1 - (1 if last else 0))
    if spare < 0:
        raise PreconditionError("not enough vertices for the requested ladder")
    major = to_mask(cert.major)
    # leftover vertices: drop the weakest minor vertices first (they stay tau-complete without them)
    drop_order = sorted(bits(rest), key=lambda v: ((major >> v) & 1, (g.adj[v] & major).bit_count(), v))
    for v in drop_order[:spare]:
        rest &= ~(1 << v)
    minor_rest = rest & ~major
    m1 = saturating_matching(g, bits(minor_rest), bits(rest & major))
    if m1 is None:
        raise Inconclusive("minor vertices cannot be matched into the major set")
    left = rest & major & ~to_mask(m1.values())
    pairs = list(m1.items()) + _halve_path(g, left)
    segs = [rung(*first)] + [rung(x, y, swappable=True) for x, y in pairs]
    end = None
    if last:
        segs.append(rung(*last))
        end = len(segs) - 1
    return chain(g, segs, first=0, last=end)


def _pick_rung(g: Graph, cert: TauCompleteCert, u: int, v: int, used: int) -> tuple[int, int]:
    """``x ~ u`` and ``y ~ v`` with ``x ~ y``, major vertices and small ids first."""
    whole = cert.vertices & ~used
    major = to_mask(cert.major)

    def key(w: int):
        return (not (major >> w) & 1, w)

    for x in sorted(bits(g.adj[u] & whole), key=key):
        ys = g.adj[v] & g.adj[x] & whole & ~(1 << x)
        if ys:
            return x, min(bits(ys), key=key)
    raise Inconclusive(f"no rung joining the neighbourhoods of {u} and {v}")


def build_ladder_tau(g: Graph, cert: TauCompleteCert, variant: int, anchors: Sequence[int],
                     check: bool = True) -> TauLadder:
    """Ladders (or a Hamilton path) of the prescribed shape in a tau-complete graph.

    1. ``(u1, v1, u2, v2)``: floor((n-5)/2) rungs, first rung in N(u1) x N(v1), last in
       N(u2) x N(v2), avoiding the anchors and a parity vertex z in N(u1) and N(x1).
    2. ``(u1, v1, x, y)``: floor((n-2)/2) rungs avoiding u1, v1, first rung (x, y).
    3. ``(u1, v1, x, y[, z])``: as 2 with floor((n-3)/2) rungs, also avoiding z.
    4. ``(u1, v1[, x])``: floor((n-1)/2) rungs avoiding u1, first rung (x, v1).
    5. ``(u1, v1)``: Hamilton path from u1 to v1.
    """
    if check and not cert.validate(g):
        raise PreconditionError("invalid tau-complete certificate")
    whole = cert.vertices
    n = whole.bit_count()
    anchors = tuple(anchors)
    if len(set(anchors)) != len(anchors) or any(not (whole >> v) & 1 for v in anchors):
        raise PreconditionError("anchors must be distinct vertices of the graph")

    def need(cond: bool, what: str) -> None:
        if not cond:
            raise PreconditionError(what)

    if variant == 1:
        need(len(anchors) == 4, "variant 1 takes u1, v1, u2, v2")
        u1, v1, u2, v2 = anchors
        used = to_mask(anchors)
        x1, y1 = _pick_rung(g, cert, u1, v1, used)
        used |= to_mask((x1, y1))
        x2, y2 = _pick_rung(g, cert, u2, v2, used)
        used |= to_mask((x2, y2))
        zs = g.adj[u1] & g.adj[x1] & whole & ~used
        if not zs:
            raise Inconclusive("no parity vertex")
        z = (zs & -zs).bit_length() - 1
        lad = _tau_body(g, cert, to_mask(anchors) | (1 << z), (x1, y1), (x2, y2), (n - 5) // 2)
        return TauLadder(lad, parity=z)
    if variant in (2, 3):
        need(len(anchors) in ((4,) if variant == 2 else (4, 5)), f"variant {variant} takes u1, v1, x, y")
        u1, v1, x, y = anchors[:4]
        need(g.has_edge(x, u1) and g.has_edge(y, v1) and g.has_edge(x, y), "need x~u1, y~v1, x~y")
        avoid = to_mask((u1, v1))
        if variant == 2:
            return TauLadder(_tau_body(g, cert, avoid, (x, y), None, (n - 2) // 2))
        if len(anchors) == 5:
            z = anchors[4]
            need(g.has_edge(z, u1) and g.has_edge(z, x), "parity vertex must see u1 and x")
        else:
            zs = g.adj[u1] & g.adj[x] & whole & ~to_mask((u1, v1, x, y))
            if not zs:
                raise Inconclusive("no parity vertex")
            z = (zs & -zs).bit_length() - 1
        return TauLadder(_tau_body(g, cert, avoid | (1 << z), (x, y), None, (n - 3) // 2), parity=z)
    if variant == 4:
        need(len(anchors) in (2, 3), "variant 4 takes u1, v1[, x]")
        u1, v1 = anchors[:2]
        if len(anchors) == 3:
            x = anchors[2]
            need(g.has_edge(x, u1) and g.has_edge(x, v1), "x must see u1 and v1")
        else:
            xs = g.adj[u1] & g.adj[v1] & whole
            if not xs:
                raise PreconditionError("u1 and v1 have no common neighbour")
            x = (xs & -xs).bit_length() - 1
        return TauLadder(_tau_body(g, cert, 1 << u1, (x, v1), None, (n - 1) // 2))
    if variant == 5:
        need(len(anchors) == 2, "variant 5 takes u1, v1")
        sub, keep = induced_subgraph(g, bits(whole))
        index = {v: i for i, v in enumerate(keep)}
        path = hamilton_path(sub, index[anchors[0]], index[anchors[1]])
        if path is None:
            raise Inconclusive("no Hamilton path between the anchors was found")
        return TauLadder(None, path=tuple(keep[i] for i in path))
    raise PreconditionError("variant must be 1..5")


def tau_split(g: Graph, tau, within: Iterable[int]) -> TauCompleteCert:
    """A major/minor split to build with: the certificate when there is one,
    otherwise everything counted as major (small cliques miss the degree bound)."""
    within = list(within)
    cert = check_tau_complete(g, tau, within)
    if cert is None:
        cert = TauCompleteCert(as_fraction(tau), frozenset(within), frozenset())
    return cert


def attach_components(g: Graph, x1: Iterable[int], x2: Iterable[int],
                      m: Sequence[tuple[int, int]], tau=Fraction(9, 100), shortcut: bool = True) -> WeakLadder:
    """Weak ladder across two dense pieces joined by the edges ``u1u2`` and ``v1v2``.

    Gives ``k = 2`` with ``floor(|X1|/2) + floor(|X2|/2) - 2`` rungs, or ``k = 1``
    with one more rung when ``u1 ~ v1`` or ``u2 ~ v2`` (unless ``shortcut`` is off).
    """
    x1, x2 = to_mask(x1), to_mask(x2)
    c1, c2 = tau_split(g, tau, bits(x1)), tau_split(g, tau, bits(x2))
    if x1 & x2:
        raise PreconditionError("the two pieces overlap")
    (u1, u2), (v1, v2) = m
    if not ((x1 >> u1) & 1 and (x1 >> v1) & 1 and (x2 >> u2) & 1 and (x2 >> v2) & 1):
        raise PreconditionError("matching must run from X1 to X2")
    if len({u1, v1, u2, v2}) != 4 or not (g.has_edge(u1, u2) and g.has_edge(v1, v2)):
        raise PreconditionError("need two disjoint edges between the pieces")
    if shortcut and not g.has_edge(u1, v1) and g.has_edge(u2, v2):
        c1, c2, u1, u2, v1, v2 = c2, c1, u2, u1, v2, v1
    if shortcut and g.has_edge(u1, v1):
        # the edge u1v1 itself becomes the first rung of the first ladder
        x, y = _pick_rung(g, c1, u1, v1, to_mask((u1, v1)))
        body = build_ladder_tau(g, c1, 2, (u1, v1, x, y), check=False).ladder
        l1 = Ladder(g, (v1,) + body.a, (u1,) + body.b)
        x2_, y2_ = _pick_rung(g, c2, v2, u2, to_mask((u2, v2)))
        l2 = build_ladder_tau(g, c2, 2, (v2, u2, x2_, y2_), check=False).ladder
        return WeakLadder.make(l1, l2, (v1, v2, x2_), (u1, u2, y2_), 1)
    xa, ya = _pick_rung(g, c1, u1, v1, to_mask((u1, v1)))
    xb, yb = _pick_rung(g, c2, u2, v2, to_mask((u2, v2)))
    l1 = build_ladder_tau(g, c1, 2, (u1, v1, xa, ya), check=False).ladder
    l2 = build_ladder_tau(g, c2, 2, (u2, v2, xb, yb), check=False).ladder
    return WeakLadder.make(l1, l2, (xa, u1, u2, xb), (ya, v1, v2, yb), 2)


# -- two-sided ladders -------------------------------------------------------

def _pick_token(g: Graph, p: int, q: int, core_p: int, core_q: int) -> Segment:
    """3-ladder around the rung (p, q): outer rungs from the cores, ``p'' ~ q`` and ``q' ~ p``."""
    ps = sorted(bits(g.adj[q] & core_p))
    qs = g.adj[p] & core_q
    pairs = []
    for pp in ps:
        for qq in bits(g.adj[pp] & qs):
            pairs.append((pp, qq))
    for i, (p1, q1) in enumerate(pairs):
        for p2, q2 in pairs[i + 1:]:
            if p2 != p1 and q2 != q1:
                return Segment((p1, p, p2), (q1, q, q2))
    raise Inconclusive(f"cannot wrap the rung ({p}, {q}) into a 3-ladder")


def side_ladder(g: Graph, side_p: int, side_q: int, core_p: int, core_q: int,
                cover_p: bool, cover_q: bool, prefix: Sequence[Segment] = (),
                suffix: Optional[Segment] = None, extra: Sequence[Segment] = ()) -> Ladder:
    """Ladder whose rungs run from ``side_p`` (a-side) to ``side_q`` (b-side).

    Non-core vertices of a covered side are wrapped into 3-ladders, the rest
    of the covered side is matched into the other side, and the pieces are
    chained after ``prefix`` and before ``suffix``.
    """
    used = 0
    for s in list(prefix) + list(extra) + ([suffix] if suffix else []):
        used |= s.mask
    rp, rq = side_p & ~used, side_q & ~used
    cp, cq = core_p & rp, core_q & rq
    tokens: list[Segment] = []
    wrap: list[tuple[int, int]] = []
    if cover_p:
        mp = saturating_matching(g, bits(rp & ~cp), bits(cq))
        if mp is None:
            raise Inconclusive("non-core vertices cannot be matched into the other core")
        wrap += list(mp.items())
    if cover_q:
        mq = saturating_matching(g, bits(rq & ~cq), bits(cp & ~to_mask(p for p, _ in wrap)))
        if mq is None:
            raise Inconclusive("non-core vertices cannot be matched into the other core")
        wrap += [(p, q) for q, p in mq.items()]
    taken = to_mask(v for e in wrap for v in e)
    for p, q in wrap:
        tok = _pick_token(g, p, q, cp & ~taken, cq & ~taken)
        tokens.append(tok)
        taken |= tok.mask
    rp, rq = rp & ~taken, rq & ~taken
    if cover_p and cover_q and rp.bit_count() != rq.bit_count():
        raise Inconclusive("sides left unbalanced")
    if cover_p:
        m2 = saturating_matching(g, bits(rp), bits(rq))
        pairs = [] if m2 is None else sorted(m2.items())
        short = m2 is None
    else:
        m2 = saturating_matching(g, bits(rq), bits(rp))
        pairs = [] if m2 is None else sorted((p, q) for q, p in m2.items())
        short = m2 is None
    if short:
        raise Inconclusive("remaining vertices have no saturating matching")
    segs = list(prefix) + list(extra) + tokens + [rung(p, q) for p, q in pairs]
    first = 0 if prefix else None
    last = None
    if suffix:
        segs.append(suffix)
        last = len(segs) - 1
    if len(prefix) > 1:
        # a multi-segment prefix is glued first, it has a fixed internal order
        head = prefix[0]
        for s in prefix[1:]:
            head = Segment(head.a + s.a, head.b + s.b, reversible=False)
        segs = [head] + segs[len(prefix):]
        if last is not None:
            last -= len(prefix) - 1
    return chain(g, segs, first=first, last=last)


# -- bipartite dense ---------------------------------------------------------

@dataclass(frozen=True)
class BipartiteDenseCert:
    x_side: frozenset
    y_side: frozenset
    x_core: frozenset
    y_core: frozenset
    tau: Fraction
    ratio_bound: Optional[Fraction] = None

    def validate(self, g: Graph) -> bool:
        tau = as_fraction(self.tau)
        X, Y, Xc, Yc = (to_mask(s) for s in (self.x_side, self.y_side, self.x_core, self.y_core))
        if X & Y or X | Y != g.full or Xc & ~X or Yc & ~Y:
            return False
        if any(g.adj[v] & X for v in bits(X)) or any(g.adj[v] & Y for v in bits(Y)):
            return False
        nx, n = X.bit_count(), Y.bit_count()
        if self.ratio_bound is None:
            if nx != n:
                return False
            checks = [(v, Yc, (1 - tau) * n) for v in bits(Xc)] + [(v, Xc, (1 - tau) * n) for v in bits(Yc)]
            checks += [(v, Yc, 4 * tau * n) for v in bits(X & ~Xc)] + [(v, Xc, 4 * tau * n) for v in bits(Y & ~Yc)]
        else:
            c = as_fraction(self.ratio_bound)
            if not n <= nx <= c * n or Xc != X:
                return False
            ny = Yc.bit_count()
            checks = [(v, X, (1 - tau) * nx) for v in bits(Yc)] + [(v, Yc, (1 - tau) * ny) for v in bits(X)]
            checks += [(v, X, 4 * tau * nx) for v in bits(Y & ~Yc)]
        return all((g.adj[v] & target).bit_count() >= bound for v, target, bound in checks)

    def to_json(self) -> dict:
        return {"x_side": sorted(self.x_side), "y_side": sorted(self.y_side),
                "x_core": sorted(self.x_core), "y_core": sorted(self.y_core), "tau": str(self.tau),
                "ratio_bound": None if self.ratio_bound is None else str(self.ratio_bound)}


def bipartite_cert(g: Graph, tau, ratio_bound=None) -> Optional[BipartiteDenseCert]:
    """Cores for a bipartite host, balanced (no ``ratio_bound``) or with ``|Y| <= |X| <= C|Y|``."""
    tau = as_fraction(tau)
    sides = is_bipartite(g)
    if sides is None:
        return None
    X, Y = sorted(sides, key=lambda s: (-s.bit_count(), s))
    n = Y.bit_count()
    if ratio_bound is None:
        xc, yc = X, Y
        changed = True
        while changed:
            changed = False
            for core, other in ((0, 1), (1, 0)):
                cur = (xc, yc)[core]
                bad = [v for v in bits(cur) if (g.adj[v] & (xc, yc)[other]).bit_count() < (1 - tau) * n]
                if bad:
                    changed = True
                    cur &= ~to_mask(bad[:1])
                    xc, yc = (cur, yc) if core == 0 else (xc, cur)
        cert = BipartiteDenseCert(frozenset(bits(X)), frozenset(bits(Y)), frozenset(bits(xc)),
                                  frozenset(bits(yc)), tau)
    else:
        nx = X.bit_count()
        yc = to_mask(v for v in bits(Y) if (g.adj[v] & X).bit_count() >= (1 - tau) * nx)
        cert = BipartiteDenseCert(frozenset(bits(X)), frozenset(bits(Y)), frozenset(bits(X)),
                                  frozenset(bits(yc)), tau, as_fraction(ratio_bound))
    return cert if cert.validate(g) else None


@dataclass(frozen=True)
class PinnedLadder:
    ladder: Ladder
    positions: tuple[int, ...]  # 1-based rung index of each pinned edge

    def to_json(self) -> dict:
        return {"ladder": self.ladder.to_json(), "positions": list(self.positions)}


def _fillers(g: Graph, left: tuple[int, int], right: tuple[int, int], count: int,
             xc: int, yc: int) -> Optional[list[tuple[int, int]]]:
    """``count`` core rungs that link ``left`` to ``right`` (rungs are (x, y))."""
    if count == 0:
        return [] if g.has_edge(left[0], right[1]) and g.has_edge(left[1], right[0]) else None
    for x in bits(g.adj[left[1]] & xc):
        for y in bits(g.adj[left[0]] & g.adj[x] & yc):
            rest = _fillers(g, (x, y), right, count - 1, xc & ~(1 << x), yc & ~(1 << y))
            if rest is not None:
                return [(x, y)] + rest
    return None


def build_ladder_bipartite(g: Graph, cert: BipartiteDenseCert,
                           pinned: Sequence[tuple[int, int]] = ()) -> PinnedLadder:
    """Spanning ladder of the smaller side with up to four pinned rungs near the start."""
    if not cert.validate(g):
        raise PreconditionError("invalid bipartite certificate")
    if len(pinned) > 4:
        raise PreconditionError("at most four pinned edges")
    X, Y = to_mask(cert.x_side), to_mask(cert.y_side)
    xc, yc = to_mask(cert.x_core), to_mask(cert.y_core)
    pins = []
    for u, v in pinned:
        if not g.has_edge(u, v):
            raise PreconditionError(f"pinned pair {u},{v} is not an edge")
        x, y = (u, v) if (X >> u) & 1 else (v, u)
        if not ((xc >> x) & 1 or (yc >> y) & 1):
            raise PreconditionError(f"pinned edge {u},{v} misses both cores")
        pins.append((x, y))
    if len(set(v for e in pins for v in e)) != 2 * len(pins):
        raise PreconditionError("pinned edges must be disjoint")
    prefix: list[tuple[int, int]] = pins[:1]
    positions = [1] if pins else []
    free_x = xc & ~to_mask(v for e in pins for v in e)
    free_y = yc & ~to_mask(v for e in pins for v in e)
    for nxt in pins[1:]:
        cur = prefix[-1]
        full_core = (xc >> cur[0]) & 1 and (yc >> cur[1]) & 1
        for count in range(0, 2 if full_core else 3):
            fill = _fillers(g, cur, nxt, count, free_x, free_y)
            if fill is not None:
                break
        else:
            raise Inconclusive(f"cannot link pinned edges {cur} and {nxt} within the gap bound")
        prefix += fill + [nxt]
        free_x &= ~to_mask(x for x, _ in fill)
        free_y &= ~to_mask(y for _, y in fill)
        positions.append(len(prefix))
    head = [Segment(tuple(x for x, _ in prefix), tuple(y for _, y in prefix), reversible=False)] if prefix else []
    balanced = cert.ratio_bound is None
    lad = side_ladder(g, X, Y, xc, yc, cover_p=balanced, cover_q=True, prefix=head)
    if lad.n != Y.bit_count():
        raise DefectError(f"ladder has {lad.n} rungs, expected {Y.bit_count()}")
    return PinnedLadder(lad, tuple(positions))


# -- extremal case -----------------------------------------------------------

@dataclass(frozen=True)
class Example2Cert:
    """The host is a spanning subgraph of the clique-plus-matched-side family."""
    q: int
    clique_side: frozenset
    matched_side: frozenset
    matching: tuple[tuple[int, int], ...]

    def to_json(self) -> dict:
        return {"family": "Ex2", "q": self.q, "clique_side": sorted(self.clique_side),
                "matched_side": sorted(self.matched_side), "matching": [list(e) for e in self.matching]}


@dataclass(frozen=True)
class ExtremalSplit:
    a_side: int
    b_side: int
    a_core: int
    b_core: int


def extremal_split(g: Graph, bcert: BetaExtremalCert) -> ExtremalSplit:
    """Refine ``A = V - B`` and ``B`` into cores plus reassigned exceptional vertices.

    At small ``n`` the ``gamma n`` thresholds can exceed ``n``; a vertex
    meeting neither goes to the side where it has more neighbours across.
    """
    n, delta = g.n, min_degree(g)
    beta = float(bcert.beta)
    gamma = 6 * math.sqrt(beta)
    B = to_mask(bcert.b_set)
    A = g.full & ~B
    C = to_mask(bcert.exceptional)
    B1 = B & ~C
    moved = to_mask(v for v in bits(A) if (g.adj[v] & B1).bit_count() < n - delta - gamma * n)
    A2, B2 = A & ~moved, B1
    C |= moved
    pa, pb = A2, B2
    for v in bits(C):
        to_a = (g.adj[v] & B2).bit_count()
        to_b = (g.adj[v] & A2).bit_count()
        ok_a, ok_b = to_a >= gamma * n, to_b >= gamma * n
        if ok_a == ok_b:
            # both or neither threshold met: balance, then prefer more neighbours across
            if ok_a:
                go_a = pa.bit_count() < pb.bit_count()
            else:
                go_a = to_a > to_b or (to_a == to_b and pa.bit_count() < pb.bit_count())
        else:
            go_a = ok_a
        if go_a:
            pa |= 1 << v
        else:
            pb |= 1 << v
    if pa.bit_count() > pb.bit_count():
        pa, pb, A2, B2 = pb, pa, B2, A2
    return ExtremalSplit(pa, pb, A2, B2)


def _star_tokens(g: Graph, split: ExtremalSplit, stars, used: int) -> tuple[list[Segment], int]:
    toks = []
    for centre, leaves in stars:
        free = split.a_core & ~used
        if len(leaves) == 3:
            xl, yl, zl = leaves
            ys = g.adj[yl] & g.adj[xl] & free
            picked = None
            for y in bits(ys):
                zs = g.adj[zl] & g.adj[xl] & free & ~(1 << y)
                if zs:
                    picked = (y, (zs & -zs).bit_length() - 1)
                    break
            if picked is None:
                raise Inconclusive("a triple star has no partners in the small side")
            y, z = picked
            toks.append(Segment((y, centre, z), (yl, xl, zl)))
            used |= to_mask((y, z, centre) + leaves)
        else:
            xl, yl = leaves
            ys = g.adj[xl] & g.adj[yl] & free
            if not ys:
                raise Inconclusive("a double star has no partner in the small side")
            y = (ys & -ys).bit_length() - 1
            # rung (centre, xl) must sit at an end of the ladder
            toks.append(Segment((y, centre), (yl, xl), reversible=False))
            used |= to_mask((y, centre) + leaves)
    return toks, used


def build_ladder_extremal(g: Graph, bcert: BetaExtremalCert,
                          targets: Optional[TargetPartition] = None) -> Union[Ladder, Example2Cert, CyclePacking]:
    """``L_delta`` in a beta-extremal host, or the Example-2 structure (with a packing when some target is >= 3)."""
    if not bcert.validate(g):
        raise PreconditionError("invalid beta-extremal certificate")
    delta = min_degree(g)
    split = extremal_split(g, bcert)
    pa, pb = split.a_side, split.b_side
    if pa.bit_count() >= delta:
        lad = side_ladder(g, pa, pb, split.a_core, split.b_core, cover_p=True, cover_q=False)
        return lad.sub(0, delta)
    K = delta - pa.bit_count()
    if K == 1 and all((g.adj[v] & pb).bit_count() == 1 for v in bits(pb)):
        pairs = tuple(sorted({tuple(sorted((v, (g.adj[v] & pb).bit_length() - 1))) for v in bits(pb)}))
        cert = Example2Cert(delta, frozenset(bits(pa)), frozenset(bits(pb)), pairs)
        if targets is not None and max(targets.targets) >= 3:
            return _moreover_packing(g, split, cert, targets)
        return cert
    triples = star_packing(g, pb, 3)
    use3 = triples[:K]
    rest = pb & ~to_mask(v for c, ls in use3 for v in (c,) + ls)
    doubles = star_packing(g, rest, 2)[: K - len(use3)]
    if len(use3) + len(doubles) < K or len(doubles) > 2:
        raise Inconclusive(f"only {len(use3)} triple and {len(doubles)} double stars for deficiency {K}")
    toks, _ = _star_tokens(g, split, use3, 0)
    ends, _ = _star_tokens(g, split, doubles, to_mask(v for s in toks for v in s.a + s.b))
    prefix = [Segment(ends[0].a[::-1], ends[0].b[::-1], reversible=False)] if ends else []
    suffix = ends[1] if len(ends) > 1 else None
    lad = side_ladder(g, pa, pb, split.a_core, split.b_core, cover_p=True, cover_q=False,
                      prefix=prefix, suffix=suffix, extra=toks)
    if lad.n < delta:
        raise DefectError(f"extremal ladder has {lad.n} < {delta} rungs")
    return lad.sub(0, delta)


def _moreover_packing(g: Graph, split: ExtremalSplit, cert: Example2Cert, t: TargetPartition) -> CyclePacking:
    """A 6-cycle through two matching edges, extended along a ladder to the largest target."""
    delta = cert.q
    a_core = split.a_core
    edges = list(cert.matching)
    big = max(range(len(t)), key=lambda i: (t.targets[i], -i))
    nl = t.targets[big]
    for i, e1 in enumerate(edges):
        for e2 in edges[i + 1:]:
            for v1, v1p in (e1, e1[::-1]):
                for v2, v2p in (e2, e2[::-1]):
                    for x1 in bits(g.adj[v1] & g.adj[v2p] & a_core):
                        for x1p in bits(g.adj[v1p] & g.adj[v2] & a_core & ~(1 << x1)):
                            c6 = (x1, v1, v1p, x1p, v2, v2p)
                            try:
                                return _splice(g, split, t, big, nl, c6, delta)
                            except Inconclusive:
                                continue
    raise Inconclusive("no 6-cycle splice found")


def _splice(g: Graph, split: ExtremalSplit, t: TargetPartition, big: int, nl: int,
            c6: tuple[int, ...], delta: int) -> CyclePacking:
    x1, v1, v1p, x1p, v2, v2p = c6
    used = to_mask(c6)
    pa, pb = split.a_side & ~used, split.b_side & ~used
    rest_targets = [(i, m) for i, m in enumerate(t.targets) if i != big]
    placed: dict[int, list[int]] = {}
    if delta - 3 == 0:
        placed[big] = list(c6)
        return make_packing(g, t, placed)
    for z1 in bits(g.adj[x1] & pb):
        for z1p in bits(g.adj[v1] & g.adj[z1] & pa):
            try:
                lad = side_ladder(g, pa, pb, split.a_core & pa, split.b_core & pb,
                                  cover_p=True, cover_q=False, prefix=[rung(z1p, z1)])
            except Inconclusive:
                continue
            if lad.n < delta - 3:
                continue
            lad = lad.sub(0, delta - 3)
            j = nl - 3
            if j == 0:
                placed[big] = list(c6)
            else:
                placed[big] = lad.hampath(j) + [x1, v2p, v2, x1p, v1p, v1]
            if rest_targets:
                sub = cycles_from_ladder(lad.sub(j, lad.n), TargetPartition(tuple(m for _, m in rest_targets)))
                # cycles come back in sorted-target order, which is the order of rest_targets
                for (i, _), cyc in zip(rest_targets, sub.cycles):
                    placed[i] = list(cyc)
            return make_packing(g, t, placed)
    raise Inconclusive("no first rung next to the 6-cycle")
