"""Command-line entry point: solve, verify, kernelize, gen, bench.

Exit codes: 0 solved/feasible, 1 infeasible/no, 2 input error, 3 resource
limit.  JSON goes to stdout with a fixed key order; every solve result is
re-verified through the domination checker before exit 0.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import bench as bench_mod
from .approx import approx_01, approx_11
from .domination import Instance, Solution, verify
from .errors import DedsError, InputError, ResourceLimitError
from .fpt import solve_01, solve_11
from .gen import (
    McInstance,
    aim_to_tournament,
    gen_digraph,
    gen_tournament,
    is_to_aim,
    mcc_to_optional,
    optional_to_full,
)
from .graph import Digraph, Tournament, UndirectedGraph
from .io import format_digraph, format_solution, load_digraph, parse_solution
from .kernel import kernelize_01, kernelize_11
from .oracle import exact_min_deds
from .tournament import solve_tournament
from .twdp import heuristic_td, make_nice, parse_td, solve_twdp

EXIT_OK, EXIT_NO, EXIT_INPUT, EXIT_RESOURCE = 0, 1, 2, 3


def _parse_pq(text: str) -> tuple[int, int]:
    try:
        p, q = (int(x) for x in text.split(","))
    except ValueError as exc:
        raise InputError(f"--pq expects 'P,Q', got {text!r}") from exc
    if p < 0 or q < 0:
        raise InputError("p and q must be non-negative")
    return p, q


def _emit(obj: dict) -> None:
    print(json.dumps(obj))


def _result_json(engine, pq, sol: Solution | None, feasible, elapsed_ms, extra=None):
    out = {
        "engine": engine,
        "pq": list(pq),
        "size": sol.size if sol is not None else None,
        "arcs": sorted(sol.arcs) if sol is not None else [],
        "feasible": feasible,
        "elapsed_ms": elapsed_ms,
    }
    if sol is not None and sol.audit:
        out["audit"] = sol.audit
    if extra:
        out.update(extra)
    return out


def _solve(args) -> int:
    p, q = _parse_pq(args.pq)
    g, mask = load_digraph(args.file)
    inst = Instance(g, p, q, budget=args.k, optional_mask=mask)
    engine = args.engine
    t0 = time.perf_counter()
    sol: Solution | None
    if engine == "auto":
        engine, sol = _auto_solve(g, inst, p, q, args)
    else:
        sol = _run_engine(engine, g, inst, p, q, args)
    elapsed = round((time.perf_counter() - t0) * 1000.0, 3)
    if sol is None:
        _emit(_result_json(engine, (p, q), None, False, elapsed))
        return EXIT_NO
    ok = verify(inst, sol)
    _emit(_result_json(engine, (p, q), sol, ok, elapsed))
    return EXIT_OK if ok else EXIT_NO


def _run_engine(engine: str, g: Digraph, inst: Instance, p, q, args) -> Solution | None:
    if engine == "oracle":
        k_max = args.k if args.k is not None else g.m
        return exact_min_deds(inst, k_max)
    if engine in ("fpt01", "fpt11"):
        if args.k is None:
            raise InputError(f"--k is mandatory for engine {engine}")
        want = (0, 1) if engine == "fpt01" else (1, 1)
        if (p, q) != want:
            raise InputError(f"engine {engine} solves (p,q)={want} only")
        if inst.optional_mask:
            raise InputError("branching engines do not support optional arcs")
        return (solve_01 if engine == "fpt01" else solve_11)(g, args.k)
    if engine in ("approx01", "approx11"):
        want = (0, 1) if engine == "approx01" else (1, 1)
        if (p, q) != want:
            raise InputError(f"engine {engine} solves (p,q)={want} only")
        if inst.optional_mask:
            raise InputError("approximation engines do not support optional arcs")
        sol = (approx_01 if engine == "approx01" else approx_11)(g)
        if args.k is not None and sol.size > args.k:
            return None
        return sol
    if engine == "twdp":
        if args.td and args.td != "heuristic":
            with open(args.td, "r", encoding="utf-8") as fh:
                td = parse_td(fh.read())
        else:
            td = heuristic_td(g)
        ntd = make_nice(td, g)
        size, sol = solve_twdp(g, p, q, ntd, optional_mask=inst.optional_mask)
        if args.k is not None and size > args.k:
            return None
        return sol
    if engine == "tournament":
        if not g.is_tournament():
            raise InputError("input graph is not a tournament")
        if inst.optional_mask:
            raise InputError("tournament engines do not support optional arcs")
        return solve_tournament(Tournament.from_digraph(g), p, q, k=args.k)
    raise InputError(f"unknown engine {engine!r}")


def _auto_solve(g, inst, p, q, args):
    """Tournament routing first, exact engines when they apply, else fallbacks."""
    if g.n > 1 and g.is_tournament() and not inst.optional_mask:
        return "tournament", solve_tournament(Tournament.from_digraph(g), p, q, k=args.k)
    if args.k is not None and not inst.optional_mask and (p, q) in ((0, 1), (1, 1)):
        engine = "fpt01" if (p, q) == (0, 1) else "fpt11"
        return engine, _run_engine(engine, g, inst, p, q, args)
    try:
        return "oracle", _run_engine("oracle", g, inst, p, q, args)
    except ResourceLimitError:
        pass
    if (p, q) in ((0, 1), (1, 1)) and not inst.optional_mask:
        engine = "approx01" if (p, q) == (0, 1) else "approx11"
        return engine, _run_engine(engine, g, inst, p, q, args)
    return "twdp", _run_engine("twdp", g, inst, p, q, args)


def _verify(args) -> int:
    p, q = _parse_pq(args.pq)
    g, mask = load_digraph(args.file)
    with open(args.solfile, "r", encoding="utf-8") as fh:
        arcs = parse_solution(fh.read(), g)
    inst = Instance(g, p, q, budget=args.k, optional_mask=mask)
    sol = Solution(arcs=arcs, engine="verify")
    ok = verify(inst, sol)
    _emit(
        {
            "engine": "verify",
            "pq": [p, q],
            "size": len(arcs),
            "arcs": sorted(arcs),
            "feasible": ok,
            "elapsed_ms": 0.0,
        }
    )
    return EXIT_OK if ok else EXIT_NO


def _kernelize(args) -> int:
    p, q = _parse_pq(args.pq)
    if (p, q) not in ((0, 1), (1, 1)):
        raise InputError("kernelize supports --pq 0,1 or 1,1 only")
    g, mask = load_digraph(args.file)
    if mask:
        raise InputError("kernels are defined for standard instances; optional arcs present")
    res = (kernelize_01 if (p, q) == (0, 1) else kernelize_11)(g, args.k)
    base = args.out or "kernel"
    graph_path = f"{base}.graph"
    cert_path = f"{base}.cert.json"
    with open(graph_path, "w", encoding="utf-8") as fh:
        fh.write(format_digraph(res.reduced.g))
    cert = {
        "verdict": res.verdict,
        "pq": [p, q],
        "k_in": args.k,
        "k_out": res.k_out,
        "n_out": res.reduced.g.n,
        "m_out": res.reduced.g.m,
        "matching_size": res.certificate.get("matching_size"),
    }
    with open(cert_path, "w", encoding="utf-8") as fh:
        json.dump(cert, fh, indent=2)
        fh.write("\n")
    _emit({**cert, "graph": graph_path, "certificate": cert_path})
    return EXIT_NO if res.verdict == "rejected-no" else EXIT_OK


def _load_undirected(path: str) -> UndirectedGraph:
    g, mask = load_digraph(path)
    if mask:
        raise InputError("undirected input cannot carry optional marks")
    return UndirectedGraph(g.n, [(min(u, v), max(u, v)) for (u, v) in g.arcs])


def _load_mcc(path: str) -> McInstance:
    """MCC format: header 'k n m' then m edge lines; class i is [i*n,(i+1)*n)."""
    with open(path, "r", encoding="utf-8") as fh:
        lines = [
            ln.split("#", 1)[0].split()
            for ln in fh.read().splitlines()
            if ln.split("#", 1)[0].strip()
        ]
    if not lines or len(lines[0]) != 3:
        raise InputError("MCC header must be 'k n m'")
    k, n, m = (int(x) for x in lines[0])
    if len(lines) - 1 != m:
        raise InputError(f"MCC header promises {m} edges, file has {len(lines) - 1}")
    edges = [(int(a), int(b)) for a, b in lines[1:]]
    graph = UndirectedGraph(k * n, edges)
    classes = [list(range(i * n, (i + 1) * n)) for i in range(k)]
    return McInstance(graph, classes)


def _gen(args) -> int:
    base = args.out or f"gen-{args.generator}"
    if args.generator == "tournament":
        t = gen_tournament(args.n, args.seed)
        lineage = {"generator": "tournament", "n": args.n, "seed": args.seed}
        _write_instance(base, t, frozenset(), lineage)
        return EXIT_OK
    if args.generator == "digraph":
        g = gen_digraph(args.n, args.prob, args.seed)
        lineage = {
            "generator": "digraph",
            "n": args.n,
            "arc_prob": args.prob,
            "seed": args.seed,
        }
        _write_instance(base, g, frozenset(), lineage)
        return EXIT_OK
    if args.generator == "mcc-reduce":
        mc = _load_mcc(args.file)
        out = mcc_to_optional(mc)
        if args.full:
            out = optional_to_full(out, set(out.lineage["cover_set"]))
        lineage = {**out.lineage, "threshold": out.threshold,
                   "p": out.instance.p, "q": out.instance.q}
        _write_instance(base, out.instance.g, out.instance.optional_mask, lineage)
        return EXIT_OK
    if args.generator == "aim-reduce":
        g = _load_undirected(args.file)
        aim_graph, target = is_to_aim(g, args.k)
        if not args.tournament:
            lineage = {"generator": "aim-reduce", "k": args.k, "L": target}
            _write_instance(
                base,
                Digraph(aim_graph.n, aim_graph.edges),
                frozenset(),
                lineage,
            )
            return EXIT_OK
        # two side-swapped copies make the bipartition balanced
        n1 = aim_graph.n
        side_a = [x for x in range(g.n)] + [2 * g.n + 3 * e + 1 for e in range(g.m)]
        edges = list(aim_graph.edges) + [(u + n1, v + n1) for (u, v) in aim_graph.edges]
        doubled = UndirectedGraph(2 * n1, edges)
        a_side = side_a + [v + n1 for v in range(n1) if v not in set(side_a)]
        out = aim_to_tournament(doubled, a_side, 2 * target, args.seed)
        lineage = {**out.lineage, "threshold": out.threshold, "k": args.k}
        _write_instance(base, out.instance.g, frozenset(), lineage)
        return EXIT_OK
    raise InputError(f"unknown generator {args.generator!r}")


def _write_instance(base, g, mask, lineage) -> None:
    graph_path = f"{base}.graph"
    lineage_path = f"{base}.json"
    with open(graph_path, "w", encoding="utf-8") as fh:
        fh.write(format_digraph(g, frozenset(mask)))
    with open(lineage_path, "w", encoding="utf-8") as fh:
        json.dump(lineage, fh, indent=2, sort_keys=True)
        fh.write("\n")
    _emit({"graph": graph_path, "lineage": lineage_path, "n": g.n, "m": g.m})


def _bench(args) -> int:
    summary = bench_mod.run_suite(args.suite, args.out)
    _emit(summary)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="deds",
        description="Directed (p,q)-edge dominating set toolkit",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("solve", help="solve an instance")
    sp.add_argument("--pq", required=True, help="domination ranges, e.g. 1,1")
    sp.add_argument(
        "--engine",
        default="auto",
        choices=["auto", "oracle", "fpt01", "fpt11", "approx01", "approx11", "twdp", "tournament"],
    )
    sp.add_argument("--k", type=int, default=None, help="budget (mandatory for fpt engines)")
    sp.add_argument("--td", default=None, help="tree decomposition file or 'heuristic'")
    sp.add_argument("file")
    sp.set_defaults(func=_solve)

    vp = sub.add_parser("verify", help="verify a solution file")
    vp.add_argument("--pq", required=True)
    vp.add_argument("--k", type=int, default=None)
    vp.add_argument("file")
    vp.add_argument("solfile")
    vp.set_defaults(func=_verify)

    kp = sub.add_parser("kernelize", help="kernelize an instance")
    kp.add_argument("--pq", required=True, choices=["0,1", "1,1"])
    kp.add_argument("--k", type=int, required=True)
    kp.add_argument("--out", default=None, help="output base path")
    kp.add_argument("file")
    kp.set_defaults(func=_kernelize)

    gp = sub.add_parser("gen", help="generate instances")
    gsub = gp.add_subparsers(dest="generator", required=True)
    g1 = gsub.add_parser("tournament")
    g1.add_argument("--n", type=int, required=True)
    g1.add_argument("--seed", type=int, default=0)
    g1.add_argument("--out", default=None)
    g2 = gsub.add_parser("digraph")
    g2.add_argument("--n", type=int, required=True)
    g2.add_argument("--prob", type=float, required=True)
    g2.add_argument("--seed", type=int, default=0)
    g2.add_argument("--out", default=None)
    g3 = gsub.add_parser("mcc-reduce")
    g3.add_argument("--full", action="store_true", help="apply the standard-instance transform")
    g3.add_argument("--out", default=None)
    g3.add_argument("file")
    g4 = gsub.add_parser("aim-reduce")
    g4.add_argument("--k", type=int, required=True)
    g4.add_argument("--tournament", action="store_true")
    g4.add_argument("--seed", type=int, default=0)
    g4.add_argument("--out", default=None)
    g4.add_argument("file")
    for gx in (g1, g2, g3, g4):
        gx.set_defaults(func=_gen)

    bp = sub.add_parser("bench", help="run a named benchmark suite")
    bp.add_argument("--suite", required=True)
    bp.add_argument("--out", default="bench-out")
    bp.set_defaults(func=_bench)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (DedsError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
