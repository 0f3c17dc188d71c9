"""Command-line entry point: ``domspec <subcommand> ...``."""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import enumeration, verify
from .domination import domination_number
from .enumeration import ClassQuery, class_members
from .families import FAMILIES, FamilySpec, make
from .graph import Graph, GraphError, build_graph, emit_graph6, is_connected, parse_graph6
from .spectral import char_poly, spectral_radius
from .transforms import (
    balance_pendants, diamond_reduce, shift_edges, slide_path, subdivide, tr1, tr2,
)

FORMATS = ("json", "csv", "graph6", "text")


class UsageError(Exception):
    pass


def _ints(text: str | None) -> list[int]:
    if not text:
        return []
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from exc


def _pair(text: str) -> tuple[int, int]:
    parts = text.replace(":", "-").split("-")
    if len(parts) != 2:
        raise UsageError(f"expected u-v, got {text!r}")
    try:
        return int(parts[0]), int(parts[1])
    except ValueError as exc:
        raise UsageError(f"expected u-v, got {text!r}") from exc


def parse_edges(text: str) -> Graph:
    pairs = [_pair(tok) for tok in text.split(",") if tok.strip()]
    n = 1 + max((max(p) for p in pairs), default=-1)
    return build_graph(max(n, 1), pairs)


def read_graph(args) -> Graph:
    modes = [m for m in ("graph6", "edges", "family") if getattr(args, m, None)]
    if len(modes) != 1:
        raise UsageError("give exactly one of --graph6, --edges, --family")
    if args.graph6:
        return parse_graph6(args.graph6)
    if args.edges:
        return parse_edges(args.edges)
    return make(FamilySpec.parse(args.family, args.params or ""))


def _graph_dict(g: Graph) -> dict:
    return {"n": g.n, "m": g.m, "graph6": emit_graph6(g), "edges": [list(e) for e in g.edges()]}


def _emit(args, payload, text: str, csv_text: str | None = None, g6: str | None = None) -> None:
    fmt = args.format
    if fmt == "json":
        out = json.dumps(payload, indent=2, sort_keys=True, default=str) + "\n"
    elif fmt == "csv":
        if csv_text is None:
            raise UsageError("csv output is not available for this subcommand")
        out = csv_text
    elif fmt == "graph6":
        if g6 is None:
            raise UsageError("graph6 output is not available for this subcommand")
        out = g6
    else:
        out = text
    if out and not out.endswith("\n"):
        out += "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


# -- subcommands -----------------------------------------------------------------

def cmd_spectral(args) -> int:
    g = read_graph(args)
    res = spectral_radius(g, tol=args.tol)
    payload = {"schema_version": verify.SCHEMA_VERSION, "rho": res.rho, "iterations": res.iterations,
               "residual": res.residual, "perron": [float(x) for x in res.perron], "graph": _graph_dict(g)}
    csv_text = "rho,iterations,residual\n" + f"{res.rho!r},{res.iterations},{res.residual!r}\n"
    _emit(args, payload, repr(res.rho), csv_text)
    return 0


def cmd_charpoly(args) -> int:
    g = read_graph(args)
    p = char_poly(g)
    payload = {"schema_version": verify.SCHEMA_VERSION, "coeffs": [str(c) for c in p.coeffs],
               "graph": _graph_dict(g)}
    csv_text = "power,coefficient\n" + "".join(f"{i},{c}\n" for i, c in enumerate(p.coeffs))
    _emit(args, payload, str(p), csv_text)
    return 0


def cmd_domination(args) -> int:
    g = read_graph(args)
    cert = domination_number(g)
    payload = {"schema_version": verify.SCHEMA_VERSION, "gamma": cert.gamma,
               "witness": sorted(cert.witness), "method": cert.method}
    csv_text = "gamma,witness,method\n" + f"{cert.gamma},{' '.join(map(str, sorted(cert.witness)))},{cert.method}\n"
    _emit(args, payload, str(cert.gamma), csv_text)
    return 0


def cmd_family(args) -> int:
    if not args.family:
        raise UsageError("--family is required")
    g = make(FamilySpec.parse(args.family, args.params or ""))
    payload = {"schema_version": verify.SCHEMA_VERSION, "family": args.family,
               "params": _ints(args.params), **_graph_dict(g)}
    text = emit_graph6(g)
    _emit(args, payload, text, None, text)
    return 0


TRANSFORMS = ("subdivide", "slide", "shift", "tr1", "tr2", "diamond", "balance")


def cmd_transform(args) -> int:
    g = read_graph(args)
    op = args.op
    d = _ints(args.dominating_set)
    if op == "subdivide":
        if not args.edge:
            raise UsageError("subdivide needs --edge u-v")
        out = subdivide(g, _pair(args.edge), args.k)
    elif op == "slide":
        out = slide_path(g, args.v, _ints(args.s_path), _ints(args.t_path))
    elif op == "shift":
        out = shift_edges(g, args.u, args.v, _ints(args.w))
    elif op in ("tr1", "tr2", "diamond"):
        if not d:
            d = sorted(domination_number(g).witness)
        if op == "diamond":
            out = diamond_reduce(g, d).graph
        else:
            out = (tr1 if op == "tr1" else tr2)(g, d, args.u)
    else:
        out = balance_pendants(g, args.u, args.v, args.a, args.b)
    before = spectral_radius(g).rho
    if is_connected(out):
        after = spectral_radius(out).rho
    else:
        after = float(np.max(np.abs(np.linalg.eigvalsh(out.adjacency_matrix()))))
    payload = {"schema_version": verify.SCHEMA_VERSION, "op": op, "input": _graph_dict(g),
               "output": _graph_dict(out), "rho_before": before, "rho_after": float(after)}
    _emit(args, payload, emit_graph6(out), None, emit_graph6(out))
    return 0


def cmd_enumerate(args) -> int:
    q = ClassQuery(args.n, args.gamma, args.trees_only)
    codes = [emit_graph6(g) for g in class_members(q)]
    payload = {"schema_version": verify.SCHEMA_VERSION, "n": q.n, "gamma": q.gamma,
               "trees_only": q.trees_only, "count": len(codes), "graphs": codes}
    text = "\n".join(codes)
    _emit(args, payload, text, None, text)
    return 0


def cmd_minimize(args) -> int:
    if args.plot_data:
        if args.format not in ("csv", "text"):
            args.format = "csv"
        csv_text = verify.valley_csv(args.n)
        _emit(args, None, csv_text, csv_text)
        return 0
    if args.gamma is None:
        raise UsageError("minimize needs --gamma (or --plot-data)")
    mr = verify.find_minimizers(ClassQuery(args.n, args.gamma, args.trees), exact=not args.float_only)
    payload = {"schema_version": verify.SCHEMA_VERSION, **mr.to_dict()}
    winners = [emit_graph6(g) for g in mr.winner_graphs]
    csv_text = "n,gamma,class_size,winner,rho_lo,rho_hi\n" + "".join(
        f"{mr.n},{mr.gamma},{mr.class_size},{w},{mr.rho_interval.lo},{mr.rho_interval.hi}\n" for w in winners)
    text = "\n".join(winners)
    _emit(args, payload, text, csv_text, text)
    return 0


VERIFY_TARGETS = ("all", "tree", "small-gamma", "gamma3", "corona", "distance3",
                  "lemma", "identities", "conjecture")


def _verify_reports(args) -> list:
    t = args.target
    if t == "all":
        say = (lambda s: print(s, file=sys.stderr)) if args.verbose else None
        return verify.run_all(max_n=args.max_n, seed=args.seed, trials=args.trials, progress=say)
    if t == "lemma":
        ids = [args.lemma] if args.lemma else list(verify.LEMMAS)
        return [verify.verify_lemma_suite(i, args.trials, args.seed) for i in ids]
    if t == "identities":
        return [verify.verify_identity_suite()]
    if args.n is None:
        raise UsageError(f"verify {t} needs --n")
    fn = {
        "tree": verify.verify_minimizer_is_tree,
        "small-gamma": verify.verify_small_gamma,
        "gamma3": verify.verify_gamma3,
        "corona": verify.verify_corona_even,
        "distance3": verify.verify_distance_three,
        "conjecture": verify.check_conjecture_odd,
    }[t]
    return [fn(args.n)]


def cmd_verify(args) -> int:
    reports = _verify_reports(args)
    payload = {"schema_version": verify.SCHEMA_VERSION, "reports": [r.to_dict() for r in reports]}
    text = "\n".join(f"{r.claim_id:20s} {r.parameter_range:45s} {r.status}" for r in reports)
    _emit(args, payload, text, verify.reports_csv(reports))
    refuted = [r for r in reports if r.strict and r.status == "refuted"]
    return 1 if args.strict and refuted else 0


# -- parser -----------------------------------------------------------------------

def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--format", choices=FORMATS, default=None, help="output format")
    p.add_argument("--out", help="write output to this file instead of stdout")
    p.add_argument("--seed", type=int, default=42, help="seed for randomised suites")
    p.add_argument("--threads", type=int, default=None,
                   help="worker processes for class sweeps (env DOMSPEC_THREADS)")
    return p


def _graph_input(p: argparse.ArgumentParser) -> None:
    p.add_argument("--graph6", help="graph in graph6 format")
    p.add_argument("--edges", help="edge list such as 0-1,1-2")
    p.add_argument("--family", help=f"family name: {', '.join(FAMILIES)}")
    p.add_argument("--params", help="comma-separated family parameters")


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    ap = argparse.ArgumentParser(prog="domspec", description=(
        "Minimum spectral radius of connected graphs with given domination number: "
        "compute, enumerate and certify."))
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectral", parents=[common], help="spectral radius and Perron vector")
    _graph_input(p)
    p.add_argument("--tol", type=float, default=1e-12)
    p.set_defaults(func=cmd_spectral, default_format="text")

    p = sub.add_parser("charpoly", parents=[common], help="exact characteristic polynomial")
    _graph_input(p)
    p.set_defaults(func=cmd_charpoly, default_format="text")

    p = sub.add_parser("domination", parents=[common], help="domination number with witness")
    _graph_input(p)
    p.set_defaults(func=cmd_domination, default_format="text")

    p = sub.add_parser("family", parents=[common], help="build a named family member")
    p.add_argument("--family", required=True, choices=FAMILIES)
    p.add_argument("--params", default="")
    p.set_defaults(func=cmd_family, default_format="graph6")

    p = sub.add_parser("transform", parents=[common], help="apply a graph transformation")
    _graph_input(p)
    p.add_argument("--op", required=True, choices=TRANSFORMS)
    p.add_argument("--edge", help="edge u-v (subdivide)")
    p.add_argument("--k", type=int, default=1, help="vertices to insert (subdivide)")
    p.add_argument("--u", type=int)
    p.add_argument("--v", type=int)
    p.add_argument("--w", help="vertices to shift (shift)")
    p.add_argument("--s-path", help="shorter pendant path (slide)")
    p.add_argument("--t-path", help="longer pendant path (slide)")
    p.add_argument("--a", type=int)
    p.add_argument("--b", type=int)
    p.add_argument("--dominating-set", help="minimum dominating set; computed when omitted")
    p.set_defaults(func=cmd_transform, default_format="graph6")

    p = sub.add_parser("enumerate", parents=[common], help="list a class as graph6 lines")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--gamma", type=int)
    p.add_argument("--trees-only", "--trees", dest="trees_only", action="store_true")
    p.set_defaults(func=cmd_enumerate, default_format="graph6")

    p = sub.add_parser("minimize", parents=[common], help="certified minimisers of a class")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--gamma", type=int)
    p.add_argument("--trees", "--trees-only", dest="trees", action="store_true")
    p.add_argument("--float-only", action="store_true", help="skip the exact playoff")
    p.add_argument("--plot-data", action="store_true",
                   help="CSV of (a, rho) along G2(a, n-2a-7, a)")
    p.set_defaults(func=cmd_minimize, default_format="json")

    p = sub.add_parser("verify", parents=[common], help="run claim checks")
    p.add_argument("target", nargs="?", default="all", choices=VERIFY_TARGETS)
    p.add_argument("--n", type=int)
    p.add_argument("--max-n", type=int, default=18)
    p.add_argument("--lemma", choices=sorted(verify.LEMMAS))
    p.add_argument("--trials", type=int, default=500)
    p.add_argument("--strict", action="store_true", help="exit 1 if an asserted claim is refuted")
    p.add_argument("--verbose", action="store_true", help="progress on stderr")
    p.set_defaults(func=cmd_verify, default_format="json")
    return ap


def run(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.format is None:
        args.format = args.default_format
    threads = args.threads if args.threads is not None else enumeration.default_workers()
    enumeration.set_workers(threads)
    try:
        return args.func(args)
    except (UsageError, GraphError) as exc:
        print(f"domspec: error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())
