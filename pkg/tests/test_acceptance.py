"""Acceptance suite: one test per criterion, summarised at the end of the run."""
import json
import random
import subprocess
import sys
import time
from fractions import Fraction
from itertools import combinations


from evencycle.enumerate import decode, graphs, level
from evencycle.families import gen_example1, gen_example2, gen_parity_4p1, gen_parity_4p2
from evencycle.graph import Graph, is_2_connected, is_cycle, min_degree, vertex_connectivity
from evencycle.hamilton import find_hamilton_cycle, posa_check
from evencycle.ladders import CyclePacking, TargetPartition, partitions, validate_packing
from evencycle.packing import Infeasible, oracle_pack, spectrum
from evencycle.paths import two_disjoint_paths
from evencycle.pipeline import obstruction_matches, pack_pipeline
from evencycle.sweeps import lemma_trials, random_2_connected


def T(*xs):
    return TargetPartition(xs)


def test_criterion_01_example1(record_property):
    start = time.perf_counter()
    for k in range(4):
        g, _ = gen_example1(3, 4, k)
        assert min_degree(g) == 4 and vertex_connectivity(g) == 3
        assert isinstance(oracle_pack(g, T(2, 2)), Infeasible)
    elapsed = time.perf_counter() - start
    assert elapsed < 10
    record_property("detail", f"k=0..3 infeasible for [2,2], {elapsed:.2f}s")


def test_criterion_02_example2(record_property):
    start = time.perf_counter()
    witnesses = []
    for n in (9, 11):
        g, _ = gen_example2(4, n)
        assert isinstance(oracle_pack(g, T(2, 2)), Infeasible)
        feasible = [t.targets for t in partitions(4) if max(t.targets) >= 3
                    and isinstance(oracle_pack(g, t), CyclePacking)]
        assert feasible
        witnesses.append(f"n={n}:{feasible[0]}")
    elapsed = time.perf_counter() - start
    assert elapsed < 30
    record_property("detail", f"[2,2] infeasible, feasible {' '.join(witnesses)}, {elapsed:.2f}s")


def test_criterion_03_parity(record_property):
    start = time.perf_counter()
    for gen in (gen_parity_4p2, gen_parity_4p1):
        g, _ = gen(3)
        assert isinstance(oracle_pack(g, T(2, 2, 2)), Infeasible)
    elapsed = time.perf_counter() - start
    assert elapsed < 120
    record_property("detail", f"n=14 and n=13 infeasible for [2,2,2], {elapsed:.2f}s")


def test_criterion_04_extraction_suite(record_property):
    r = lemma_trials(seed=2024, iters=10_000, max_rungs=14, max_k=3)
    ladders = sum(r[k]["weak_ladders"] for k in ("weak_ladder", "weak_ladder_k1", "plain", "reserve"))
    extractions = sum(r[k]["extractions"] for k in ("weak_ladder", "weak_ladder_k1", "plain", "reserve"))
    assert r["weak_ladder"]["weak_ladders"] >= 10_000
    assert r["defects"] == 0, r
    record_property("detail", f"{ladders} weak ladders, {extractions} validated extractions, 0 defects")


def test_criterion_05_posa_sufficiency(record_property):
    checked = positive = 0
    for n in range(3, 10):
        for code in level(n, 0):
            g = decode(n, code)
            checked += 1
            if posa_check(g):
                positive += 1
                c = find_hamilton_cycle(g)
                assert c is not None and is_cycle(g, c) and len(c) == n, code
    assert checked == sum((1, 2, 4, 11, 34, 156, 1044, 12346, 274668)[2:])
    record_property("detail", f"{checked} graphs on 3..9 vertices, {positive} Posa-positive, all Hamiltonian")


def test_criterion_06_dirac(record_property):
    rng = random.Random(6)
    sizes = []
    for i in range(1000):
        n = rng.randint(10, 200)
        while True:
            g = Graph(n, [e for e in combinations(range(n), 2) if rng.random() < 0.62])
            if 2 * min_degree(g) >= n:
                break
        c = find_hamilton_cycle(g, seed=i)
        assert c is not None and len(c) == n and is_cycle(g, c)
        sizes.append(n)
    record_property("detail", f"1000/1000 Hamilton cycles, n in [{min(sizes)}, {max(sizes)}]")


def test_criterion_07_conjecture(record_property):
    checked = 0
    for n in range(6, 10):
        for code, g in graphs(n, 3, n // 2):
            d = min_degree(g)
            if n < 2 * d or not is_2_connected(g):
                continue
            s = spectrum(g)
            assert s.complete
            assert len(s.even_lengths) >= d - 1, (n, code)
            checked += 1
    assert checked > 0
    record_property("detail", f"{checked} graphs (n<=9, delta>=3, n>=2delta), 0 violations")


def test_criterion_08_pipeline_oracle(record_property):
    rng = random.Random(2024)
    runs = obstructions = 0
    for _ in range(1000):
        g = random_2_connected(rng, 4, 12)
        for t in partitions(min_degree(g)):
            res = pack_pipeline(g, t)
            ref = oracle_pack(g, t)
            assert (res.verdict == "packing") == isinstance(ref, CyclePacking)
            if res.verdict == "packing":
                assert validate_packing(g, t.targets, res.packing.cycles)
            if res.verdict == "obstruction":
                obstructions += 1
                assert obstruction_matches(g, t)
                assert isinstance(ref, Infeasible)
            runs += 1
    record_property("detail", f"1000 graphs, {runs} partitions agree, {obstructions} family obstructions")


def test_criterion_09_short_paths(record_property):
    rng = random.Random(9)
    worst = {Fraction(3, 10): 0, Fraction(4, 10): 0}
    in_hypothesis = 0
    for i in range(200):
        alpha = (Fraction(3, 10), Fraction(4, 10))[i % 2]
        # n > 10/alpha^2 is reachable inside [40, 80] only for alpha = 0.4
        n = rng.randint(63, 80) if alpha == Fraction(4, 10) else rng.randint(40, 80)
        while True:
            g = Graph(n, [e for e in combinations(range(n), 2) if rng.random() < float(alpha) + 0.1])
            if min_degree(g) >= alpha * n and is_2_connected(g):
                break
        in_hypothesis += n > 10 / alpha ** 2
        vs = rng.sample(range(n), rng.randint(4, 10))
        k = rng.randint(2, len(vs) - 2)
        p, q = two_disjoint_paths(g, vs[:k], vs[k:])
        total = len(p) + len(q)
        assert total <= 10 / alpha
        worst[alpha] = max(worst[alpha], total)
    record_property("detail", f"max total {worst[Fraction(3, 10)]} (a=0.3), {worst[Fraction(4, 10)]} (a=0.4); "
                              f"{in_hypothesis}/200 with n > 10/a^2")


def _cli(args, cwd):
    out = subprocess.run([sys.executable, "-m", "evencycle", *args], capture_output=True, cwd=cwd)
    return out.returncode, out.stdout


def test_criterion_10_determinism(tmp_path, record_property):
    a, b = tmp_path / "a", tmp_path / "b"
    a.mkdir()
    b.mkdir()
    commands = [
        ["gen", "ex1", "--l", "3", "--q", "4", "--k", "0", "-o", "g1"],
        ["gen", "ex2", "--q", "4", "--n", "9", "-o", "g2"],
        ["gen", "random", "--n", "11", "--seed", "5", "-o", "g3"],
        ["solve", "g1.edges", "2,2"],
        ["solve", "g2.edges", "4"],
        ["solve", "g3.edges", "2", "--allow-any-sum"],
        ["oracle", "g2.edges", "2,2"],
        ["spectrum", "g3.edges"],
        ["detect", "g2.edges", "--beta", "0.12"],
        ["verify", "lemmas", "--seed", "7", "--iters", "200"],
        ["verify", "conjecture", "--n-max", "7"],
        ["verify", "theorem", "--n-max", "9", "--seed", "3", "--samples", "5"],
    ]
    for cmd in commands:
        ra, oa = _cli(cmd, a)
        rb, ob = _cli(cmd, b)
        assert ra == rb and oa == ob, cmd
        json.loads(oa)
    files = sorted(p.name for p in a.iterdir())
    for name in files:
        assert (a / name).read_bytes() == (b / name).read_bytes(), name
    record_property("detail", f"{len(commands)} commands and {len(files)} files byte-identical across reruns")
