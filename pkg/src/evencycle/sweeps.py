"""Verification sweeps: exhaustive over small graphs, seeded random beyond."""
from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Optional

from .enumerate import graphs
from .errors import DefectError, EvenCycleError, PreconditionError
from .families import GENERATORS
from .graph import Graph, format_edge_list, is_2_connected, min_degree
from .ladders import (CyclePacking, NearBisection, TargetPartition, cycles_from_ladder, cycles_from_weak_ladder,
                      cycles_from_weak_ladder_k1, cycles_from_weak_ladder_with_reserve, partitions,
                      weak_ladder_graph, weak_ladder_with_reserve_graph)
from .packing import oracle_pack, spectrum
from .pipeline import Caps, pack_pipeline

CONJECTURE_EXHAUSTIVE_N = 9
THEOREM_EXHAUSTIVE_N = 8


def random_2_connected(rng: random.Random, n_lo: int, n_hi: int, min_deg: int = 2,
                       tries: int = 1000) -> Graph:
    """Rejection-sample a 2-connected G(n, p) with the requested minimum degree."""
    for _ in range(tries):
        n = rng.randint(n_lo, n_hi)
        p = rng.uniform(0.3, 0.9)
        g = Graph(n, [e for e in combinations(range(n), 2) if rng.random() < p])
        if min_degree(g) >= min_deg and is_2_connected(g):
            return g
    raise PreconditionError("could not sample a 2-connected graph")


def _map(fn: Callable, items: list, workers: int) -> list:
    """Order-stable map, optionally over worker processes."""
    if workers <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, items, chunksize=max(1, len(items) // (8 * workers))))


def _witness(g: Graph) -> str:
    return format_edge_list(g)


# -- conjecture --------------------------------------------------------------

def _conjecture_case(item: tuple[int, int]) -> Optional[dict]:
    n, code = item
    from .enumerate import decode
    g = decode(n, code)
    d = min_degree(g)
    if d < 3 or n < 2 * d or not is_2_connected(g):
        return None
    s = spectrum(g)
    bip = not s.odd_lengths
    return {"n": n, "d": d, "even": len(s.even_lengths), "odd": len(s.odd_lengths), "bipartite": bip,
            "ok": len(s.even_lengths) >= d - 1, "odd_ok": bip or len(s.odd_lengths) >= d,
            "code": code}


def conjecture_sweep(n_max: int = 8, workers: int = 1, seed: int = 0, samples: int = 200,
                     exhaustive_max: int = CONJECTURE_EXHAUSTIVE_N) -> dict:
    """Count 2-connected graphs with ``n >= 2 delta``, ``delta >= 3`` and check ``|S_e| >= delta - 1``.

    Exhaustive up to ``exhaustive_max`` vertices; beyond, ``samples``
    seeded random graphs per order.  The odd-length half is reported only.
    """
    checked = 0
    odd_short = 0
    violations = []
    by_n = {}
    for n in range(6, n_max + 1):
        if n <= exhaustive_max:
            items = [(n, code) for code, _ in graphs(n, 3, n // 2)]
            results = [r for r in _map(_conjecture_case, items, workers) if r is not None]
            mode = "exhaustive"
        else:
            rng = random.Random(seed * 1000 + n)
            results = []
            for _ in range(samples):
                g = random_2_connected(rng, n, n, 3)
                if n < 2 * min_degree(g):
                    continue
                s = spectrum(g)
                d = min_degree(g)
                results.append({"n": n, "d": d, "even": len(s.even_lengths), "odd": len(s.odd_lengths),
                                "bipartite": not s.odd_lengths, "ok": len(s.even_lengths) >= d - 1,
                                "odd_ok": not s.odd_lengths or len(s.odd_lengths) >= d,
                                "graph": _witness(g)})
            mode = "random"
        by_n[str(n)] = {"mode": mode, "checked": len(results)}
        checked += len(results)
        for r in results:
            if not r["odd_ok"]:
                odd_short += 1
            if not r["ok"]:
                w = dict(r)
                if "code" in w:
                    from .enumerate import decode
                    w["graph"] = _witness(decode(w["n"], w.pop("code")))
                violations.append(w)
    return {"mode": "conjecture", "n_max": n_max, "checked": checked, "by_n": by_n,
            "confirmed": checked - len(violations), "odd_report_only_short": odd_short,
            "violations": violations}


# -- theorem -----------------------------------------------------------------

def _theorem_case(args) -> dict:
    g, caps = args
    d = min_degree(g)
    window = 2 * d < g.n - 2  # delta < n/2 - 1
    out = {"packing": 0, "obstruction": 0, "infeasible": 0, "inconclusive": 0, "violations": [],
           "small_exceptions": [], "window": window, "families": {}}
    for t in partitions(d):
        try:
            res = pack_pipeline(g, t, caps)
        except DefectError as exc:
            out["violations"].append({"graph": _witness(g), "targets": list(t.targets), "error": str(exc)})
            continue
        out[res.verdict] += 1
        if res.verdict == "obstruction":
            for m in res.report.matches:
                out["families"][m.family] = out["families"].get(m.family, 0) + 1
        if res.verdict == "infeasible" and window:
            out["small_exceptions"].append({"graph": _witness(g), "targets": list(t.targets)})
        if res.verdict in ("packing", "obstruction") and g.n <= caps.pack:
            ref = oracle_pack(g, t, caps.pack)
            if (res.verdict == "packing") != isinstance(ref, CyclePacking):
                out["violations"].append({"graph": _witness(g), "targets": list(t.targets),
                                          "error": "pipeline and oracle disagree"})
    return out


def _family_grid(n_max: int) -> list[tuple[str, dict, Graph, TargetPartition]]:
    grid = []
    for l in range(2, n_max):
        for q in range(4, n_max, 2):
            for k in range(4):
                n = l * (q - 2) + 3
                if n <= n_max and l * (q - 2) + k >= q:
                    g, c = GENERATORS["ex1"](l, q, k)
                    grid.append(("Ex1", {"l": l, "q": q, "k": k}, g, c.blocked_partition))
    for q in range(4, n_max, 2):
        for n in range(q + 1, n_max + 1):
            if (n - q + 1) % 2 == 0:
                g, c = GENERATORS["ex2"](q, n)
                grid.append(("Ex2", {"q": q, "n": n}, g, c.blocked_partition))
    return grid


def theorem_sweep(n_max: int = 8, workers: int = 1, seed: int = 0, samples: int = 50,
                  caps: Caps = Caps()) -> dict:
    """Run the pipeline on every 2-connected graph (and every partition of its minimum degree).

    A violation is a defect or a pipeline/oracle disagreement.  Oracle-proved
    infeasible cases inside the ``delta < n/2 - 1`` window are listed as small
    exceptions: the packing statement is asymptotic.
    """
    totals = {"packing": 0, "obstruction": 0, "infeasible": 0, "inconclusive": 0}
    graphs_checked = 0
    in_window = 0
    violations, exceptions = [], []
    families: dict[str, int] = {}
    for n in range(4, n_max + 1):
        if n <= THEOREM_EXHAUSTIVE_N:
            gs = [g for _, g in graphs(n, 2) if is_2_connected(g)]
        else:
            rng = random.Random(seed * 1000 + n)
            gs = [random_2_connected(rng, n, n, 2) for _ in range(samples)]
        for r in _map(_theorem_case, [(g, caps) for g in gs], workers):
            graphs_checked += 1
            in_window += r["window"]
            for key in totals:
                totals[key] += r[key]
            violations += r["violations"]
            exceptions += r["small_exceptions"]
            for fam, c in r["families"].items():
                families[fam] = families.get(fam, 0) + c
    grid = _family_grid(n_max)
    grid_report = {}
    for fam, params, g, t in grid:
        res = pack_pipeline(g, t, caps)
        entry = grid_report.setdefault(fam, {"generated": 0, "reported": 0})
        entry["generated"] += 1
        if res.verdict == "obstruction" and any(m.family == fam for m in res.report.matches):
            entry["reported"] += 1
        else:
            violations.append({"graph": _witness(g), "targets": list(t.targets),
                               "error": f"{fam}{params} not reported as an obstruction"})
    return {"mode": "theorem", "n_max": n_max, "graphs": graphs_checked, "in_window": in_window,
            "verdicts": totals, "family_matches": dict(sorted(families.items())),
            "generator_grid": grid_report, "small_exceptions": len(exceptions),
            "small_exception_witnesses": exceptions[:20], "violations": violations}


# -- lemmas ------------------------------------------------------------------

@dataclass
class ExtractionTally:
    weak_ladders: int = 0
    extractions: int = 0
    defects: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"weak_ladders": self.weak_ladders, "extractions": self.extractions,
                "defects": self.defects}


def _run(tally: ExtractionTally, what: str, fn, *args) -> Optional[object]:
    try:
        out = fn(*args)
    except EvenCycleError as exc:
        tally.defects.append({"extraction": what, "error": f"{type(exc).__name__}: {exc}"})
        return None
    tally.extractions += 1
    return out


def lemma_trials(seed: int = 0, iters: int = 1000, max_rungs: int = 14, max_k: int = 3) -> dict:
    """Random weak ladders, every partition meeting each extraction's hypotheses.

    Hosts have at most ``max_rungs`` rungs for the two direct extractions.  The
    reserve extraction needs ``n >= 6k + 12`` so it gets its own, larger hosts
    (one per forty trials).
    """
    rng = random.Random(seed)
    direct, k1, plain, reserve = ExtractionTally(), ExtractionTally(), ExtractionTally(), ExtractionTally()
    bisections = 0
    parts_cache: dict[int, list[TargetPartition]] = {}

    def parts(total: int) -> list[TargetPartition]:
        if total not in parts_cache:
            parts_cache[total] = partitions(total)
        return parts_cache[total]

    for it in range(iters):
        total = rng.randint(2, max_rungs)
        n1 = rng.randint(1, total - 1)
        k = rng.randint(0, max_k)
        ki = rng.randint(0, 2 * k)
        g, w = weak_ladder_graph(n1, total - n1, ki, 2 * k - ki, rng)
        direct.weak_ladders += 1
        # the tight sum n = n' - k carries every case of the selection argument
        for t in parts(w.n_total - w.k):
            _run(direct, "weak-ladder", cycles_from_weak_ladder, w, t)
        if k == 1:
            k1.weak_ladders += 1
            for t in parts(w.n_total):
                if max(t.targets) > 2:
                    _run(k1, "weak-ladder-k1", cycles_from_weak_ladder_k1, w, t)
        if it % 4 == 0:
            from .ladders import ladder_graph, WeakLadder
            hg, lad = ladder_graph(total)
            wl = WeakLadder.plain(lad)
            plain.weak_ladders += 1
            for t in parts(total):
                a = _run(plain, "plain", cycles_from_weak_ladder, wl, t)
                b = cycles_from_ladder(lad, t)
                if a is not None and [len(c) for c in a.cycles] != [len(c) for c in b.cycles]:
                    plain.defects.append({"extraction": "plain", "error": f"lengths differ for {t.targets}"})
        if it % 40 == 0:
            r = rng.randint(1, 2)
            kk = rng.randint(r, 2)
            n = rng.randint(6 * kk + 12, 6 * kk + 16)
            nprime = rng.randint(n - r, n + kk)
            m1 = rng.randint(1, nprime // 2)
            ki = rng.randint(0, 2 * kk)
            rg, rw, res = weak_ladder_with_reserve_graph(m1, nprime - m1, ki, 2 * kk - ki, -(-n // 3), rng)
            reserve.weak_ladders += 1
            for t in parts(n):
                out = _run(reserve, "reserve", cycles_from_weak_ladder_with_reserve, rw, res, t, r)
                bisections += isinstance(out, NearBisection)
    tallies = {"weak_ladder": direct, "weak_ladder_k1": k1, "plain": plain, "reserve": reserve}
    return {"mode": "lemmas", "seed": seed, "iters": iters,
            **{name: t.to_json() for name, t in tallies.items()},
            "near_bisections": bisections,
            "defects": sum(len(t.defects) for t in tallies.values())}
