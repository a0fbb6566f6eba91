"""Command-line front end: generate, solve, inspect and sweep."""
from __future__ import annotations

import argparse
import json
import logging
import random
import sys
import time
from pathlib import Path

from . import __version__
from .dense import bipartite_cert, check_tau_complete
from .errors import DefectError, GraphFormatError, PreconditionError
from .families import GENERATORS, detect_example1, detect_example2
from .graph import Graph, format_edge_list, is_2_connected, min_degree, parse_edge_list, vertex_connectivity
from .ladders import CyclePacking, TargetPartition
from .packing import Infeasible, as_fraction, detect_beta_extremal, oracle_pack, search_beta_extremal, spectrum
from .pipeline import DEFAULT_BETA, DEFAULT_TAU, Caps, obstruction_matches, pack_pipeline
from .sweeps import conjecture_sweep, lemma_trials, random_2_connected, theorem_sweep

log = logging.getLogger("evencycle")

EXIT_OK = 0
EXIT_OBSTRUCTION = 2
EXIT_VIOLATION = 3
EXIT_USAGE = 64

FAMILY_PARAMS = {"ex1": ("l", "q", "k"), "ex2": ("q", "n"), "par4p2": ("p",), "par4p1": ("p",)}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(obj, output: str | None) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _read_graph(path: str) -> tuple[Graph, list[str]]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}")
    g, labels, _ = parse_edge_list(text)
    return g, labels


def _targets(text: str) -> TargetPartition:
    try:
        return TargetPartition(tuple(int(x) for x in text.split(",")))
    except ValueError:
        raise UsageError(f"targets must be comma-separated integers, got {text!r}")


def _label_map(labels: list[str]) -> dict | None:
    """Only worth reporting when the file used names other than 0..n-1."""
    if labels == [str(i) for i in range(len(labels))]:
        return None
    return {str(i): lab for i, lab in enumerate(labels)}


def _with_labels(report: dict, labels: list[str]) -> dict:
    m = _label_map(labels)
    if m is not None:
        report["labels"] = m
    return report


# -- commands ----------------------------------------------------------------

def cmd_gen(args) -> int:
    if args.family == "random":
        if args.n is None:
            raise UsageError("gen random needs --n")
        rng = random.Random(args.seed)
        g = random_2_connected(rng, args.n, args.n, args.min_degree or 2)
        cert = {"family": "random", "params": {"n": args.n, "seed": args.seed},
                "min_degree": min_degree(g), "connectivity": vertex_connectivity(g)}
        stem = f"random_n{args.n}_s{args.seed}"
    else:
        names = FAMILY_PARAMS[args.family]
        missing = [f"--{p}" for p in names if getattr(args, p) is None]
        if missing:
            raise UsageError(f"gen {args.family} needs {' '.join(missing)}")
        params = {p: getattr(args, p) for p in names}
        g, c = GENERATORS[args.family](**params)
        cert = c.to_json()
        stem = args.family + "".join(f"_{p}{v}" for p, v in params.items())
    prefix = Path(args.output) if args.output else Path(stem)
    edges_path = prefix.with_name(prefix.name + ".edges")
    cert_path = prefix.with_name(prefix.name + ".cert.json")
    edges_path.write_text(format_edge_list(g, [f"{cert['family']} {json.dumps(cert['params'], sort_keys=True)}"]))
    cert_path.write_text(json.dumps(cert, indent=2, sort_keys=True) + "\n")
    _emit({"graph": str(edges_path), "certificate": str(cert_path), "n": g.n, "m": len(g.edges())}, None)
    return EXIT_OK


def cmd_solve(args) -> int:
    g, labels = _read_graph(args.graph)
    t = _targets(args.targets)
    res = pack_pipeline(g, t, Caps.from_env(), beta=as_fraction(args.beta), tau=as_fraction(args.tau),
                        allow_any_sum=args.allow_any_sum)
    _emit(_with_labels(res.to_json(timing=args.timing), labels), args.output)
    return EXIT_OBSTRUCTION if res.verdict in ("obstruction", "infeasible") else EXIT_OK


def cmd_oracle(args) -> int:
    g, labels = _read_graph(args.graph)
    t = _targets(args.targets)
    caps = Caps.from_env()
    start = time.perf_counter()
    res = oracle_pack(g, t, caps.pack)
    elapsed = (time.perf_counter() - start) * 1000
    if isinstance(res, CyclePacking):
        verdict, packing, cert = "packing", res.to_json(), None
    elif isinstance(res, Infeasible):
        verdict, packing, cert = "infeasible", None, {"targets": list(t.targets), "exhaustive": True}
    else:
        verdict, packing, cert = "over_cap", None, res.to_json()
    out = {"verdict": verdict, "packing": packing, "certificate": cert,
           "elapsed_ms": round(elapsed, 3) if args.timing else None}
    _emit(_with_labels(out, labels), args.output)
    return EXIT_OBSTRUCTION if verdict == "infeasible" else EXIT_OK


def cmd_spectrum(args) -> int:
    g, labels = _read_graph(args.graph)
    s = spectrum(g, Caps.from_env().spectrum)
    d = min_degree(g)
    out = {"n": g.n, "min_degree": d, **s.to_json()}
    if d >= 3 and g.n >= 2 * d and is_2_connected(g):
        out["even_count_at_least_d_minus_1"] = len(s.even_lengths) >= d - 1
    _emit(out, args.output)
    return EXIT_OK


def cmd_detect(args) -> int:
    g, labels = _read_graph(args.graph)
    caps = Caps.from_env()
    d = min_degree(g)
    t = _targets(args.targets) if args.targets else None
    fams = [m for m in (detect_example1(g), detect_example2(g)) if m is not None]
    beta = as_fraction(args.beta)
    ext = search_beta_extremal(g, beta, caps.extremal)
    grown = detect_beta_extremal(g, beta, caps.extremal) if ext.cert else None
    tau = as_fraction(args.tau)
    tc = check_tau_complete(g, tau)
    bc = bipartite_cert(g, tau)
    out = {
        "n": g.n, "min_degree": d,
        "families": [m.to_json() for m in fams],
        "beta_extremal": grown.to_json() if grown else None,
        "beta_extremal_absence_proved": ext.cert is None and ext.proof,
        "tau_complete": tc.to_json() if tc else None,
        "bipartite_dense": bc.to_json() if bc else None,
    }
    if t is not None:
        out["blocks_targets"] = [m.to_json() for m in obstruction_matches(g, t)]
    _emit(_with_labels(out, labels), args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.mode == "lemmas":
        report = lemma_trials(args.seed, args.iters)
        bad = report["defects"]
    elif args.mode == "conjecture":
        report = conjecture_sweep(args.n_max, args.workers, args.seed, args.samples)
        bad = len(report["violations"])
    else:
        report = theorem_sweep(args.n_max, args.workers, args.seed, args.samples, Caps.from_env())
        bad = len(report["violations"])
    _emit(report, args.output)
    if bad:
        log.error("%d violation(s) found", bad)
        return EXIT_VIOLATION
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="evencycle", description="Disjoint even-cycle packings in 2-connected graphs.")
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("-v", "--verbose", action="store_true")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", "-o", help="write the report here instead of stdout")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--timing", action="store_true", help="include elapsed_ms (breaks byte-stability)")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", parents=[common], help="write a family graph and its certificate")
    g.add_argument("family", choices=sorted(GENERATORS) + ["random"])
    for name in ("l", "q", "k", "n", "p"):
        g.add_argument(f"--{name}", type=int)
    g.add_argument("--min-degree", type=int)
    g.set_defaults(func=cmd_gen)

    s = sub.add_parser("solve", parents=[common], help="pack cycles of lengths 2*t_i")
    s.add_argument("graph")
    s.add_argument("targets", help="comma-separated, e.g. 2,3")
    s.add_argument("--allow-any-sum", action="store_true")
    s.add_argument("--beta", default=str(DEFAULT_BETA))
    s.add_argument("--tau", default=str(DEFAULT_TAU))
    s.set_defaults(func=cmd_solve)

    o = sub.add_parser("oracle", parents=[common], help="exhaustive packing search only")
    o.add_argument("graph")
    o.add_argument("targets")
    o.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("spectrum", parents=[common], help="even and odd cycle lengths")
    sp.add_argument("graph")
    sp.set_defaults(func=cmd_spectrum)

    d = sub.add_parser("detect", parents=[common], help="structural certificates")
    d.add_argument("graph")
    d.add_argument("--targets")
    d.add_argument("--beta", default=str(DEFAULT_BETA))
    d.add_argument("--tau", default=str(DEFAULT_TAU))
    d.set_defaults(func=cmd_detect)

    v = sub.add_parser("verify", parents=[common], help="verification sweeps")
    v.add_argument("mode", choices=["conjecture", "theorem", "lemmas"])
    v.add_argument("--n-max", type=int, default=8)
    v.add_argument("--iters", type=int, default=1000)
    v.add_argument("--samples", type=int, default=50, help="random graphs per order above the exhaustive range")
    v.add_argument("--workers", type=int, default=1)
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (UsageError, GraphFormatError, PreconditionError, ValueError) as exc:
        print(f"evencycle: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DefectError as exc:
        print(f"evencycle: internal defect: {exc}", file=sys.stderr)
        return EXIT_VIOLATION


if __name__ == "__main__":
    sys.exit(main())
