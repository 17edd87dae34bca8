"""Command-line front end: ``rexlab construct | pipeline | verify``.

Exit codes: 0 success, 2 usage or parse error, 3 contract failure, 4 infeasible.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path
from typing import Optional

from . import constructions as C
from .graph import EdgeListError, Graph, read_edgelist, write_edgelist
from .numtheory import bose_chowla, quotient_set
from .pipelines import pipeline_c4, pipeline_k2t, pipeline_k33, pipeline_kst
from .regularize import InfeasibleError, SearchBudgetExceeded, default_budget
from .verify import verify_graph

EXIT_OK, EXIT_USAGE, EXIT_CONTRACT, EXIT_INFEASIBLE = 0, 2, 3, 4

FAMILIES = ("bipartite-c4", "bipartite-k2t", "h", "h-star", "brown", "norm", "er-parsons", "cayley-sum")
PIPELINES = ("c4", "k2t", "k33", "kst")


class UsageError(Exception):
    pass


def _need(args, *names):
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.family} needs {', '.join(missing)}")


def _check(checks: list, name: str, expected, actual) -> None:
    checks.append({"check": name, "expected": expected, "actual": actual, "ok": expected == actual})


def _freeness_check(checks: list, report, s: int, t: int) -> None:
    if (s, t) in report.freeness:
        _check(checks, f"K_{s},{t}-free", True, report.freeness[(s, t)])
    else:
        checks.append({"check": f"K_{s},{t}-free", "expected": True, "actual": None, "ok": None,
                       "note": "skipped: graph above codegree cap"})


def _parse_set(text: str, rank: int) -> list:
    out = []
    for item in filter(None, (x.strip() for x in text.split(";"))):
        coords = tuple(int(c) for c in item.split(","))
        if len(coords) != rank:
            raise UsageError(f"element {item!r} needs {rank} coordinates")
        out.append(coords)
    return out


def build_family(args) -> tuple[Graph, list, list]:
    """Returns (graph, freeness queries, contract checks to run after verification)."""
    fam = args.family
    expect: list = []  # (name, expected, getter)
    if fam in ("bipartite-c4", "bipartite-k2t"):
        t = 1 if fam == "bipartite-c4" else args.t
        _need(args, "M", "p") if fam == "bipartite-c4" else _need(args, "M", "p", "t")
        A = bose_chowla(args.p) if t == 1 else quotient_set(args.p, t)
        k = args.k if args.k is not None else len(A)
        G = C.bipartite_sum(args.M, A.elements[:k], A)
        free = [(2, 2)] if t == 1 else [(2, 2 * t + 1)]
        expect += [("vertices", 2 * args.M, lambda G: G.n), ("regular_degree", k, None)]
    elif fam in ("h", "h-star"):
        _need(args, "p", "t")
        p, t = args.p, args.t
        if fam == "h":
            G = C.h_graph(p, t)
            free = [(2, t + 1)]
            hist = {p - 2: p - 1}
            if p * (p - 1) // t > p - 1:
                hist[p - 1] = p * (p - 1) // t - (p - 1)
            expect += [("vertices", p * (p - 1) // t, lambda G: G.n),
                       ("degree_histogram", hist, lambda G: G.degree_histogram())]
        else:
            G = C.h_star(p, t)
            free = [(2, 2 * t + 1)]
            expect += [("vertices", p * (p - 1) // t + 1, lambda G: G.n), ("regular_degree", p - 1, None)]
    elif fam == "brown":
        _need(args, "p")
        G = C.brown(args.p)
        free = [(3, 3)]
        expect += [("vertices", args.p**3, lambda G: G.n), ("regular_degree", args.p**2 - args.p, None)]
    elif fam == "norm":
        _need(args, "p", "s")
        p, s = args.p, args.s
        G = C.norm_graph(p, s, with_loops=args.loops)
        D = (p**s - 1) // (p - 1)
        free = [(s, math.factorial(s) + 1)]
        expect += [("vertices", p**s, lambda G: G.n), ("absolute_points", D, lambda G: len(G.absolute_points))]
        if args.loops:
            expect += [("regular_degree", D, None), ("loops", D, lambda G: G.loop_count)]
        else:
            expect += [("degree_histogram", {D - 1: D, D: p**s - D}, lambda G: G.degree_histogram())]
    elif fam == "er-parsons":
        _need(args, "q")
        q = args.q
        ER, R1, R2 = C.er_polarity(q)
        G = {"er": ER, "r1": R1, "r2": R2}[args.which]
        free = [(2, 2)]
        if args.which == "er":
            expect += [("vertices", q * q + q + 1, lambda G: G.n),
                       ("absolute_points", q + 1, lambda G: len(G.absolute_points))]
        elif args.which == "r1":
            expect += [("vertices", q * (q + 1) // 2, lambda G: G.n), ("regular_degree", (q - 1) // 2, None)]
        else:
            expect += [("vertices", q * (q - 1) // 2, lambda G: G.n), ("regular_degree", (q + 1) // 2, None)]
    elif fam == "cayley-sum":
        if not args.orders or args.set is None:
            raise UsageError("cayley-sum needs --orders and --set")
        group = C.AbelianGroup(tuple(args.orders))
        S = _parse_set(args.set, len(group.cyclic_orders))
        G = C.cayley_sum(group, S, keep_loops=args.loops)
        free = []
        if args.loops:
            expect.append(("regular_degree", len({group.normalize(x) for x in S}), None))
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(f"unknown family {fam}")
    return G, free, expect


def _contract(G: Graph, report, free, expect) -> list:
    checks: list = []
    for name, expected, getter in expect:
        actual = report.regular_degree if getter is None else getter(G)
        if isinstance(actual, dict):
            actual = {int(k): int(v) for k, v in actual.items()}
        _check(checks, name, expected, actual)
    for s, t in free:
        _freeness_check(checks, report, s, t)
    return checks


def _write_outputs(args, stem: str, G: Graph, payload: dict) -> None:
    outdir = Path(args.outdir)
    graph_path = Path(args.out_graph) if args.out_graph else outdir / f"{stem}.edges"
    report_path = Path(args.out_report) if args.out_report else outdir / f"{stem}.json"
    if G is not None:
        graph_path.parent.mkdir(parents=True, exist_ok=True)
        write_edgelist(G, graph_path)
        payload["graph_file"] = str(graph_path)
    report_path.parent.mkdir(parents=True, exist_ok=True)
    report_path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def cmd_construct(args) -> int:
    G, free, expect = build_family(args)
    report = verify_graph(G, free=free, spectra=args.spectra, codegree_cap=args.codegree_cap)
    checks = _contract(G, report, free, expect)
    ok = all(c["ok"] is not False for c in checks)
    params = {k: getattr(args, k) for k in ("p", "q", "s", "t", "M", "k", "loops", "orders", "set")
              if getattr(args, k, None) not in (None, False)}
    if args.family == "er-parsons":
        params["which"] = args.which
    payload = report.to_dict()
    payload.update({"command": "construct", "family": args.family, "params": params,
                    "contract": {"ok": ok, "checks": checks}})
    stem = args.family + "".join(f"_{k}{v}" for k, v in params.items() if k not in ("set", "orders"))
    _write_outputs(args, stem, G, payload)
    print(json.dumps(payload, sort_keys=True))
    return EXIT_OK if ok else EXIT_CONTRACT


def cmd_pipeline(args) -> int:
    fam = args.family
    budget = args.budget if args.budget is not None else default_budget()
    if args.n is None:
        raise UsageError("pipeline needs --n")
    if fam == "c4":
        res = pipeline_c4(args.n)
    elif fam == "k2t":
        if args.t is None:
            raise UsageError("k2t needs --t")
        res = pipeline_k2t(args.n, args.t)
    elif fam == "k33":
        res = pipeline_k33(args.n)
    else:
        if args.s is None or args.t is None:
            raise UsageError("kst needs --s and --t")
        res = pipeline_kst(args.n, args.s, args.t, budget=budget, seed=args.seed)
    s, t = res.forbidden
    report = verify_graph(res.graph, free=[(s, t)], spectra=args.spectra, codegree_cap=args.codegree_cap)
    n = res.graph.n
    report.bound_comparison = {
        "achieved_degree": res.degree,
        "target_degree_bound": res.target_bound,
        "achieved_edges": res.edge_count,
        "bound_edges": n * res.target_bound / 2,
        "ratio": res.degree / res.target_bound if res.target_bound > 0 else None,
    }
    payload = report.to_dict()
    payload.update({"command": "pipeline", "family": fam, "pipeline": res.to_dict(), "seed": args.seed})
    ok = report.regular_degree == res.degree and report.freeness.get((s, t), True)
    payload["contract"] = {"ok": bool(ok)}
    stem = f"pipeline_{fam}_n{args.n}" + (f"_s{args.s}" if args.s else "") + (f"_t{args.t}" if args.t else "")
    _write_outputs(args, stem, res.graph, payload)
    print(json.dumps(payload, sort_keys=True))
    return EXIT_OK if ok else EXIT_CONTRACT


def cmd_verify(args) -> int:
    try:
        G = read_edgelist(args.graph)
    except (OSError, EdgeListError, ValueError) as exc:
        raise UsageError(f"cannot read {args.graph}: {exc}") from exc
    free = [tuple(x) for x in (args.free or [])]
    report = verify_graph(G, free=free, spectra=args.spectra, codegree_cap=args.codegree_cap)
    payload = report.to_dict()
    payload.update({"command": "verify", "graph_file": str(args.graph)})
    text = json.dumps(payload, sort_keys=True)
    if args.out_report:
        Path(args.out_report).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    print(text)
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rexlab", description="Regular F-free graph constructions and checks.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--out-graph")
        p.add_argument("--out-report")
        p.add_argument("--outdir", default=".")
        p.add_argument("--spectra", action="store_true", help="include dense spectra in the report")
        p.add_argument("--codegree-cap", type=int, default=1000, help="largest n for triple-codegree scans")

    pc = sub.add_parser("construct", help="build one graph family")
    pc.add_argument("family", choices=FAMILIES)
    for name in ("p", "q", "s", "t", "M", "k"):
        pc.add_argument(f"--{name}", type=int)
    pc.add_argument("--loops", action="store_true")
    pc.add_argument("--which", choices=("er", "r1", "r2"), default="r1")
    pc.add_argument("--orders", type=int, nargs="+")
    pc.add_argument("--set", help="connection set, e.g. '1,0;0,1'")
    common(pc)
    pc.set_defaults(func=cmd_construct)

    pp = sub.add_parser("pipeline", help="run an end-to-end regular construction")
    pp.add_argument("family", choices=PIPELINES)
    pp.add_argument("--n", type=int)
    pp.add_argument("--s", type=int)
    pp.add_argument("--t", type=int)
    pp.add_argument("--seed", type=int, default=0)
    pp.add_argument("--budget", type=int, help="Hamilton search expansions (default: REXLAB_BUDGET or 1e7)")
    common(pp)
    pp.set_defaults(func=cmd_pipeline)

    pv = sub.add_parser("verify", help="check an edge-list file")
    pv.add_argument("graph")
    pv.add_argument("--free", type=int, nargs=2, action="append", metavar=("S", "T"))
    pv.add_argument("--out-report")
    pv.add_argument("--spectra", action="store_true")
    pv.add_argument("--codegree-cap", type=int, default=1000)
    pv.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[list] = None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return int(args.func(args))
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InfeasibleError as exc:
        print(json.dumps(exc.to_dict(), sort_keys=True))
        return EXIT_INFEASIBLE
    except (C.ContractError, SearchBudgetExceeded) as exc:
        print(f"contract failure: {exc}", file=sys.stderr)
        return EXIT_CONTRACT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
