"""Command-line front end.

Machine-readable JSON goes to stdout (a run report with the result
payload, an input digest and wall time); human progress goes to stderr.
``bench`` emits CSV instead, since its payload is a timing table.

Exit codes: 0 success, 2 input error, 3 oracle cap exceeded.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys
import time
from typing import Optional

from . import bench as bench_mod
from . import families, oracle, reduction
from .errors import EdgedomError, InvalidInputError, OracleTooLargeError
from .graphs import EdgeSet, Graph
from .treedp import build_rooted, gamma_t_tree, gamma_tree


def _digest_bytes(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def _digest_file(path: str) -> str:
    with open(path, "rb") as fh:
        return _digest_bytes(fh.read())


def _render(value):
    return "unbounded" if value == math.inf else value


def _vertex(token: str):
    return int(token) if token.isdigit() else token


def _emit(args_echo, digest: str, result, t0: float) -> None:
    report = {
        "command": args_echo,
        "digest": digest,
        "result": result,
        "wall_ms": round((time.perf_counter() - t0) * 1000.0, 3),
    }
    print(json.dumps(report, sort_keys=True))


def _read_text(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InvalidInputError(f"cannot read {path}: {exc}") from None


def cmd_solve(args) -> int:
    t0 = time.perf_counter()
    g = Graph.from_text(_read_text(args.path))
    root = _vertex(args.root) if args.root is not None else None
    rt = build_rooted(g, root)
    res = gamma_t_tree(rt)
    result = {"gamma_t": _render(res.value), "witness": res.witness_pairs()}
    print(f"gamma_t({args.path}) = {result['gamma_t']}", file=sys.stderr)
    _emit(["solve", args.path], _digest_file(args.path), result, t0)
    return 0


def cmd_brute(args) -> int:
    t0 = time.perf_counter()
    g = Graph.from_text(_read_text(args.path))
    solver = oracle.brute_min_ted if args.total else oracle.brute_min_ed
    res = solver(g, cap=args.cap)
    result = {"value": _render(res.value), "witness": res.witness_pairs(),
              "total": args.total}
    which = "gamma_t" if args.total else "gamma"
    print(f"{which}({args.path}) = {result['value']}", file=sys.stderr)
    _emit(["brute", args.path, "--total" if args.total else ""],
          _digest_file(args.path), result, t0)
    return 0


def cmd_reduce(args) -> int:
    t0 = time.perf_counter()
    text = _read_text(args.cnf)
    inst, clause_lines = reduction.parse_dimacs(text)
    report = reduction.validate_sat3(inst)
    if not report.valid:
        for msg, ci in zip(report.violations, report.clause_indices):
            where = f" (line {clause_lines[ci]})" if ci is not None else ""
            print(f"invalid instance: {msg}{where}", file=sys.stderr)
        return 2
    out = reduction.build_reduction(inst)
    result = {
        "num_vars": inst.num_vars,
        "num_clauses": len(inst.clauses),
        "s": out.s,
        "k": out.k,
        "vertices": out.graph.num_vertices,
        "edges": out.graph.num_edges,
    }
    tags_doc = {"k": out.k, "s": out.s, "tags": out.vertex_tags}
    if args.out:
        with open(args.out + ".edges", "w", encoding="utf-8") as fh:
            fh.write(out.graph.to_text())
        with open(args.out + ".tags.json", "w", encoding="utf-8") as fh:
            json.dump(tags_doc, fh, sort_keys=True, indent=1)
        result["files"] = [args.out + ".edges", args.out + ".tags.json"]
    else:
        result["graph"] = out.graph.to_text()
        result["tags"] = tags_doc
    if args.check:
        eq = reduction.reduction_equivalence_check(inst, cap=args.cap)
        result["check"] = {
            "satisfiable": eq.satisfiable,
            "gamma_t": _render(eq.gamma_t),
            "k": eq.k,
            "agree": eq.agree,
        }
    print(f"reduction: n={inst.num_vars} k={out.k} s={out.s} "
          f"({out.graph.num_vertices} vertices, {out.graph.num_edges} edges)",
          file=sys.stderr)
    _emit(["reduce", args.cnf], _digest_file(args.cnf), result, t0)
    return 0


def _check_family_file(path: str):
    parsed = families.parse_labelled(_read_text(path))
    if isinstance(parsed, Graph):
        rep = families.check_ratio(parsed)
        return {
            "kind": "plain",
            "gamma": rep.gamma,
            "gamma_t": _render(rep.gamma_t),
            "classification": rep.classification(),
            "is_star": rep.is_star,
            "is_double_star": rep.is_double_star,
        }
    violations = parsed.check_labels()
    rep = families.check_ratio(parsed.underlying)
    result = {
        "kind": "T" if isinstance(parsed, families.VertexLabelledTree) else "Tt",
        "gamma": rep.gamma,
        "gamma_t": _render(rep.gamma_t),
        "classification": rep.classification(),
        "label_violations": violations,
    }
    if not violations:
        if isinstance(parsed, families.VertexLabelledTree):
            marked = families.cc_edge_set(parsed)
            result["marked_set_minimum"] = len(marked) == rep.gamma
        else:
            marked = families.s_edge_set(parsed)
            result["marked_set_minimum"] = len(marked) == rep.gamma_t
        result["marked_set"] = marked.pairs()
    return result


def cmd_family(args) -> int:
    t0 = time.perf_counter()
    if args.check:
        result = _check_family_file(args.check)
        print(f"{args.check}: {result['classification']}", file=sys.stderr)
        _emit(["family", "--check", args.check], _digest_file(args.check),
              result, t0)
        return 0
    if args.kind is None:
        raise InvalidInputError("family requires a kind (T or Tt) or --check")
    tree, trace = families.generate(args.kind, args.seed, args.budget)
    rep = families.check_ratio(tree.underlying)
    text = families.format_labelled(tree)
    result = {
        "kind": args.kind,
        "seed": args.seed,
        "budget": args.budget,
        "tree": text,
        "trace": trace,
        "gamma": rep.gamma,
        "gamma_t": _render(rep.gamma_t),
        "classification": rep.classification(),
    }
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        result["file"] = args.out
    echo = ["family", args.kind, "--seed", str(args.seed),
            "--budget", str(args.budget)]
    print(f"family {args.kind}: {tree.underlying.num_vertices} vertices, "
          f"{result['classification']}", file=sys.stderr)
    _emit(echo, _digest_bytes(json.dumps(echo).encode()), result, t0)
    return 0


def cmd_verify(args) -> int:
    t0 = time.perf_counter()
    g = Graph.from_text(_read_text(args.graph))
    wtext = _read_text(args.witness).strip()
    if wtext.startswith("["):
        pairs = [tuple(_vertex(str(x)) for x in p) for p in json.loads(wtext)]
    else:
        pairs = [tuple(e) for e in Graph.from_text(wtext).edges]
    f = EdgeSet.from_pairs(g, pairs)
    pred = oracle.is_total_edge_dominating if args.total else oracle.is_edge_dominating
    result = {"dominating": pred(g, f), "size": len(f), "total": args.total}
    print(f"{'TED' if args.total else 'ED'} check: {result['dominating']}",
          file=sys.stderr)
    _emit(["verify", args.graph, args.witness], _digest_file(args.graph),
          result, t0)
    return 0


def cmd_bench(args) -> int:
    sizes = [int(s) for s in args.sizes.split(",")] if args.sizes else []
    rows = bench_mod.run(sizes, args.seed)
    csv = bench_mod.to_csv(rows)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(csv)
    sys.stdout.write(csv)
    for r in rows:
        print(f"size {r['size']}: {r['ns'] / 1e6:.2f} ms "
              f"({r['ns_per_edge']:.1f} ns/edge)", file=sys.stderr)
    return 0


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="edgedom",
                                description="Exact edge domination toolkit")
    sub = p.add_subparsers(dest="cmd", required=True)

    sp = sub.add_parser("solve", help="total edge domination number of a tree")
    sp.add_argument("path")
    sp.add_argument("--root", help="leaf vertex to root at")
    sp.set_defaults(fn=cmd_solve)

    sp = sub.add_parser("brute", help="exact oracle on a small graph")
    sp.add_argument("path")
    sp.add_argument("--total", action="store_true")
    sp.add_argument("--cap", type=int, default=oracle.DEFAULT_ORACLE_CAP)
    sp.set_defaults(fn=cmd_brute)

    sp = sub.add_parser("reduce", help="build the SAT-3 reduction graph")
    sp.add_argument("cnf")
    sp.add_argument("--check", action="store_true",
                    help="dual brute-force equivalence check (tiny instances)")
    sp.add_argument("--cap", type=int, default=40)
    sp.add_argument("--out", help="basename for .edges and .tags.json files")
    sp.set_defaults(fn=cmd_reduce)

    sp = sub.add_parser("family", help="generate or check extremal-ratio trees")
    sp.add_argument("kind", nargs="?", choices=["T", "Tt"])
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--budget", type=int, default=8)
    sp.add_argument("--check", metavar="PATH",
                    help="classify a (labelled) tree file instead of generating")
    sp.add_argument("--out", help="write the labelled tree here")
    sp.set_defaults(fn=cmd_family)

    sp = sub.add_parser("verify", help="check a witness set against a graph")
    sp.add_argument("graph")
    sp.add_argument("witness", help="edge-list file or JSON list of pairs")
    sp.add_argument("--total", action="store_true")
    sp.set_defaults(fn=cmd_verify)

    sp = sub.add_parser("bench", help="scaling measurement for the tree solver")
    sp.add_argument("--sizes", default="1000,10000,100000,1000000")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out", help="also write the CSV here")
    sp.set_defaults(fn=cmd_bench)
    return p


def main(argv: Optional[list] = None) -> int:
    args = _parser().parse_args(argv)
    try:
        return args.fn(args)
    except OracleTooLargeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except EdgedomError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
