"""End-to-end packing: known obstructions, structural constructions, then the oracle."""
from __future__ import annotations

import os
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .dense import (Example2Cert, attach_components, bipartite_cert, build_ladder_bipartite,
                    build_ladder_extremal, build_ladder_tau, check_tau_complete)
from .errors import DefectError, Inconclusive, PreconditionError
from .families import FamilyMatch, detect_example1, detect_example2
from .graph import Graph, bits, components, is_2_connected, is_bipartite, min_degree
from .ladders import (CyclePacking, Ladder, TargetPartition, WeakLadder, cycles_from_ladder,
                      cycles_from_weak_ladder, cycles_from_weak_ladder_k1, validate_packing)
from .packing import Infeasible, detect_beta_extremal, oracle_pack

DEFAULT_BETA = Fraction(1, 10)
DEFAULT_TAU = Fraction(9, 100)


@dataclass(frozen=True)
class Caps:
    pack: int = 16
    spectrum: int = 14
    extremal: int = 14

    @classmethod
    def from_env(cls, text: str | None = None) -> "Caps":
        """Parse ``pack=16,spectrum=14,extremal=14`` (default: ``$EVENCYCLE_CAPS``)."""
        text = os.environ.get("EVENCYCLE_CAPS", "") if text is None else text
        vals = {}
        for item in filter(None, (s.strip() for s in text.split(","))):
            key, _, val = item.partition("=")
            if key not in ("pack", "spectrum", "extremal") or not val.isdigit():
                raise PreconditionError(f"bad cap setting {item!r}")
            vals[key] = int(val)
        return cls(**vals)


def obstruction_matches(g: Graph, t: TargetPartition) -> list[FamilyMatch]:
    """Every known family that blocks exactly this partition on this graph."""
    delta = min_degree(g)
    out = []
    m1 = detect_example1(g)
    if m1 is not None and delta == m1.params["q"] and t.targets == (delta // 2, delta // 2):
        out.append(m1)
    m2 = detect_example2(g)
    if m2 is not None and delta == m2.params["q"] and t.targets == (2,) * (delta // 2):
        out.append(m2)
    return out


@dataclass(frozen=True)
class ObstructionReport:
    """The graph is one of the known blocking families for these targets.

    ``oracle_confirmed`` is True/False when the exhaustive search ran, None above the cap.
    """
    targets: tuple[int, ...]
    matches: tuple = ()
    oracle_confirmed: Optional[bool] = None

    def to_json(self) -> dict:
        return {"targets": list(self.targets), "matches": [m.to_json() for m in self.matches],
                "oracle_confirmed": self.oracle_confirmed}


@dataclass(frozen=True)
class PipelineResult:
    verdict: str  # packing | obstruction | infeasible | inconclusive
    route: str
    packing: Optional[CyclePacking] = None
    report: Optional[Union[ObstructionReport, Infeasible]] = None
    certificate: Optional[dict] = None
    elapsed_ms: Optional[float] = field(default=None, compare=False)

    def to_json(self, timing: bool = False) -> dict:
        cert = {"route": self.route}
        if self.certificate:
            cert.update(self.certificate)
        if self.report is not None:
            cert["report"] = self.report.to_json()
        return {"verdict": self.verdict,
                "packing": self.packing.to_json() if self.packing else None,
                "certificate": cert,
                "elapsed_ms": round(self.elapsed_ms, 3) if timing and self.elapsed_ms is not None else None}


def _checked(g: Graph, t: TargetPartition, p: CyclePacking) -> CyclePacking:
    if not validate_packing(g, t.targets, p.cycles):
        raise DefectError("pipeline produced an invalid packing")
    return p


def _from_ladder(lad: Ladder, t: TargetPartition) -> Optional[CyclePacking]:
    return cycles_from_ladder(lad, t) if lad.n >= t.total else None


def _tau_route(g: Graph, t: TargetPartition, tau) -> Optional[tuple[CyclePacking, dict]]:
    cert = check_tau_complete(g, tau)
    if cert is None or (g.n - 1) // 2 < t.total:
        return None
    for u in sorted(cert.major):
        for v in sorted(cert.major):
            if u != v and g.adj[u] & g.adj[v] & cert.vertices:
                lad = build_ladder_tau(g, cert, 4, (u, v)).ladder
                p = _from_ladder(lad, t)
                if p is not None:
                    return p, {"tau_complete": cert.to_json(), "ladder": lad.to_json()}
                return None
    return None


def _bipartite_route(g: Graph, t: TargetPartition, tau) -> Optional[tuple[CyclePacking, dict]]:
    sides = is_bipartite(g)
    if sides is None:
        return None
    small, big = sorted(m.bit_count() for m in sides)
    if small == 0:
        return None
    cert = bipartite_cert(g, tau) if small == big else bipartite_cert(g, tau, Fraction(big, small))
    if cert is None:
        return None
    lad = build_ladder_bipartite(g, cert).ladder
    p = _from_ladder(lad, t)
    return None if p is None else (p, {"bipartite": cert.to_json(), "ladder": lad.to_json()})


def _two_piece_route(g: Graph, t: TargetPartition, tau) -> Optional[tuple[CyclePacking, dict]]:
    """Two dense pieces meeting only in edges that lie on no triangle."""
    keep = [(u, v) for u, v in g.edges() if g.adj[u] & g.adj[v]]
    h = Graph(g.n, keep)
    comps = components(h)
    if len(comps) != 2:
        return None
    x1, x2 = comps
    cross = [(u, v) for u, v in g.edges() if (x1 >> u) & 1 and (x2 >> v) & 1]
    cross += [(v, u) for u, v in g.edges() if (x2 >> u) & 1 and (x1 >> v) & 1]
    for i, (u1, u2) in enumerate(cross):
        for v1, v2 in cross[i + 1:]:
            if len({u1, u2, v1, v2}) < 4:
                continue
            w = attach_components(g, bits(x1), bits(x2), ((u1, u2), (v1, v2)), tau)
            p = _weak_extract(w, t)
            if p is not None:
                return p, {"weak_ladder": w.to_json()}
    return None


def _weak_extract(w: WeakLadder, t: TargetPartition) -> Optional[CyclePacking]:
    if w.n_total >= t.total + w.k:
        return cycles_from_weak_ladder(w, t)
    if w.k == 1 and w.n_total == t.total and max(t.targets) > 2:
        return cycles_from_weak_ladder_k1(w, t)
    return None


def pack_pipeline(g: Graph, t: TargetPartition, caps: Caps = Caps(), beta=DEFAULT_BETA,
                  tau=DEFAULT_TAU, allow_any_sum: bool = False) -> PipelineResult:
    """Packing, obstruction report, oracle infeasibility, or inconclusive.

    Routes, in order: (a) the known blocking families, (b) the beta-extremal
    construction, (c) tau-complete, bipartite-dense and two-piece ladders,
    (d) the exhaustive oracle within its cap, (e) inconclusive.
    """
    start = time.perf_counter()
    delta = min_degree(g)
    if not allow_any_sum and t.total != delta:
        raise PreconditionError(f"targets sum to {t.total}, minimum degree is {delta}")
    if not is_2_connected(g):
        raise PreconditionError("graph must be 2-connected")

    def done(**kw) -> PipelineResult:
        return PipelineResult(elapsed_ms=(time.perf_counter() - start) * 1000, **kw)

    matches = obstruction_matches(g, t)
    if matches:
        confirmed = None
        res = oracle_pack(g, t, caps.pack)
        if isinstance(res, CyclePacking):
            raise DefectError("a blocking family admits the packing")
        if isinstance(res, Infeasible):
            confirmed = True
        return done(verdict="obstruction", route="family",
                    report=ObstructionReport(t.targets, tuple(matches), confirmed))

    bcert = detect_beta_extremal(g, beta, caps.extremal)
    if bcert is not None:
        try:
            out = build_ladder_extremal(g, bcert, t)
        except (Inconclusive, PreconditionError):
            out = None
        info = {"beta_extremal": bcert.to_json()}
        if isinstance(out, Ladder) and out.n >= t.total:
            return done(verdict="packing", route="extremal", packing=_checked(g, t, cycles_from_ladder(out, t)),
                        certificate={**info, "ladder": out.to_json()})
        if isinstance(out, CyclePacking):
            return done(verdict="packing", route="extremal", packing=_checked(g, t, out), certificate=info)
        if isinstance(out, Example2Cert) and t.targets == (2,) * len(t):
            match = FamilyMatch("Ex2", {"q": out.q, "n": g.n, "perfect_matching": True},
                                tuple(sorted(out.clique_side)))
            res = oracle_pack(g, t, caps.pack)
            if isinstance(res, CyclePacking):
                raise DefectError("Example-2 structure admits the all-2 packing")
            return done(verdict="obstruction", route="extremal",
                        report=ObstructionReport(t.targets, (match,), isinstance(res, Infeasible) or None),
                        certificate={**info, "example2": out.to_json()})

    for name, route in (("tau_complete", _tau_route), ("bipartite", _bipartite_route),
                        ("two_pieces", _two_piece_route)):
        try:
            found = route(g, t, tau)
        except (Inconclusive, PreconditionError):
            found = None
        if found is not None:
            p, info = found
            return done(verdict="packing", route=name, packing=_checked(g, t, p), certificate=info)

    res = oracle_pack(g, t, caps.pack)
    if isinstance(res, CyclePacking):
        return done(verdict="packing", route="oracle", packing=_checked(g, t, res))
    if isinstance(res, Infeasible):
        return done(verdict="infeasible", route="oracle", report=res)
    return done(verdict="inconclusive", route="over_cap", certificate={"cap": res.to_json()})
