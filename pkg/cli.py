# cli.py
"""fragile: decide fragility, colour fragile graphs, build the reductions, cross-check with oracles."""
from __future__ import annotations
import argparse
import json
import logging
import os
import sys
from typing import Any, Callable, Dict, List, Optional, Sequence

from dotenv import load_dotenv

import cache_ttl
import perf
from constructions import (
    NAMED, UnknownName, build_g_double_prime, cubic_girth_pair, double_subdivide, named,
    random_fragile, replace_edges_with_gadget, search_mindeg4, tight_chain,
)
from core import FORMATS, Colouring, Graph, GraphError, emit, is_proper, parse
from decomposition import decompose, is_fragile
from engine import Condition, ConditionInvalid, EngineConfig, EngineError, Engine, check_condition
from extremal import check_edge_bound, greedy_colour
from oracle import BudgetExceeded, colour_optimally

logger = logging.getLogger("fragile")

EXIT_OK, EXIT_NO, EXIT_ERROR = 0, 1, 2


class Output:
    """Text or JSON emitter; JSON mode prints one object per command."""

    def __init__(self, as_json: bool):
        self.as_json = as_json

    def emit(self, text: str, record: Any) -> None:
        if self.as_json:
            sys.stdout.write(json.dumps(record, separators=(",", ":"), default=str) + "\n")
        else:
            sys.stdout.write(text)

    def error(self, message: str) -> None:
        sys.stderr.write(f"error: {message}\n")
        if self.as_json:
            sys.stdout.write(json.dumps({"error": message}) + "\n")


def _read_graph(args: argparse.Namespace) -> Graph:
    if args.graph == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(args.graph, "r", encoding="ascii", errors="replace") as fh:
                text = fh.read()
        except OSError as e:
            raise GraphError(f"cannot read {args.graph}: {e.strerror}") from e
    return parse(text, args.format)


def _colouring_text(c: Colouring) -> str:
    return "".join(f"{v} {col}\n" for v, col in enumerate(c.colours))


def _colouring_record(c: Colouring) -> Dict[str, int]:
    return {str(v): col for v, col in enumerate(c.colours)}


# --- commands --------------------------------------------------------------

def cmd_check(args: argparse.Namespace, out: Output) -> int:
    g = _read_graph(args)
    rep = is_fragile(g)
    if rep.fragile:
        out.emit("fragile\n", {"fragile": True, "witness": None})
        return EXIT_OK
    witness = " ".join(map(str, rep.witness))
    out.emit(f"not fragile\nwitness: {witness}\n", {"fragile": False, "witness": list(rep.witness)})
    return EXIT_NO


def cmd_colour(args: argparse.Namespace, out: Output) -> int:
    g = _read_graph(args)
    stats: Dict[str, int] = {}
    if args.mode == "greedy":
        c = greedy_colour(g)
    elif args.mode == "exact":
        c = colour_optimally(g)
    else:
        eng = Engine(g, EngineConfig(m=args.m, verify_each_step=args.verify, memo_enabled=not args.no_memo))
        c = eng.colour()
        stats = eng.stats.to_dict()
    if args.verify and not is_proper(g, c):
        out.error("colouring failed verification")
        return EXIT_NO
    text = _colouring_text(c)
    if args.stats and stats:
        sys.stderr.write(" ".join(f"{k}={v}" for k, v in stats.items()) + "\n")
    record: Dict[str, Any] = {"colouring": _colouring_record(c), "colours_used": c.used(), "mode": args.mode}
    if args.stats:
        record["stats"] = stats
    out.emit(text, record)
    return EXIT_OK


def cmd_condition(args: argparse.Namespace, out: Output) -> int:
    g = _read_graph(args)
    try:
        verts = tuple(int(v) for v in args.verts.split(","))
    except ValueError:
        raise ConditionInvalid(f"bad vertex list {args.verts!r}")
    cond = Condition(args.cond.upper(), verts)
    eng = Engine(g, EngineConfig(m=args.m, verify_each_step=args.verify))
    c = eng.satisfy(cond)
    if args.verify and not check_condition(g, cond, c):
        out.error(f"colouring fails {cond}")
        return EXIT_NO
    out.emit(_colouring_text(c), {"condition": str(cond), "colouring": _colouring_record(c)})
    return EXIT_OK


def cmd_decompose(args: argparse.Namespace, out: Output) -> int:
    g = _read_graph(args)
    tree = decompose(g)
    nodes = []
    for nd in tree.postorder():
        if nd.is_leaf:
            nodes.append({"node": nd.node_id, "leaf": list(nd.to_root)})
        else:
            nodes.append({"node": nd.node_id, "cut": [nd.to_root[v] for v in nd.separation.cut],
                          "children": list(nd.children)})
    out.emit(tree.serialize(), {"nodes": nodes, "depth": tree.depth()})
    return EXIT_OK


def cmd_stats(args: argparse.Namespace, out: Output) -> int:
    g = _read_graph(args)
    rep = check_edge_bound(g, fragile=is_fragile(g).fragile)
    out.emit(rep.to_text(), rep.to_dict())
    return EXIT_OK


GENERATORS = ("tight-chain", "random", "cubic-pair", "double-subdivide", "gpp", "gadget-swap", "mindeg4")


def _base(args: argparse.Namespace) -> Graph:
    if args.input:
        with open(args.input, "r", encoding="ascii", errors="replace") as fh:
            return parse(fh.read(), args.input_format)
    return named(args.base)


def cmd_gen(args: argparse.Namespace, out: Output) -> int:
    header: Dict[str, Any] = {"generator": args.name}
    if args.name == "tight-chain":
        g: Optional[Graph] = tight_chain(args.k)
        header["k"] = args.k
    elif args.name == "random":
        g = random_fragile(args.n, args.seed, args.profile)
        header.update(n=args.n, seed=args.seed, profile=args.profile)
    elif args.name == "cubic-pair":
        u, v = (int(x) for x in args.edge.split(","))
        g = cubic_girth_pair(_base(args), (u, v))
    elif args.name == "double-subdivide":
        g = double_subdivide(_base(args))[0]
    elif args.name == "gpp":
        g = build_g_double_prime(_base(args))[0]
    elif args.name == "gadget-swap":
        g = replace_edges_with_gadget(_base(args))
    elif args.name == "mindeg4":
        if not args.search:
            out.error("mindeg4 has no stored witness; pass --search")
            return EXIT_ERROR
        g = search_mindeg4(args.seed, args.budget)
        header.update(seed=args.seed, budget=args.budget)
        if g is None:
            out.emit(f"# no fragile min-degree-4 graph found within {args.budget} steps (seed {args.seed})\n",
                     {**header, "found": False})
            return EXIT_NO
    else:
        g = named(args.name)
    body = emit(g, args.out_format)
    seeded = {k: v for k, v in header.items() if k != "generator"}
    if "seed" in seeded:
        note = " ".join(f"{k}={v}" for k, v in seeded.items())
        if args.out_format == "edgelist":
            body = f"# {args.name} {note}\n" + body
        elif args.out_format == "dimacs":
            body = f"c {args.name} {note}\n" + body
        else:
            sys.stderr.write(f"{args.name} {note}\n")
    out.emit(body, {**header, "n": g.n, "e": g.edge_count, "graph": emit(g, args.out_format)})
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, out: Output) -> int:
    from services import verify

    rows = verify.run_suite(args.suite, args.corpus, args.seed, args.workers, use_cache=not args.no_cache)
    spec = args.corpus or verify.DEFAULT_CORPUS[args.suite]
    text = f"# verify {args.suite} corpus={spec} seed={args.seed}\n" + verify.format_rows(rows)
    out.emit(text, {"suite": args.suite, "corpus": spec, "seed": args.seed,
                    "rows": [r.to_dict() for r in rows], "cache": cache_ttl.metrics()})
    return EXIT_OK if all(r.ok for r in rows) else EXIT_NO


def cmd_bench(args: argparse.Namespace, out: Output) -> int:
    from services import bench

    if not perf.is_enabled():
        perf.enable("bench")
    rows = bench.run(args.sizes, args.seed, memo=not args.no_memo)
    text = f"# bench seed={args.seed}\n" + bench.format_rows(rows)
    out.emit(text, {"seed": args.seed, "rows": [r.to_dict() for r in rows], "spans": perf.totals()})
    return EXIT_OK if all(r.proper for r in rows) else EXIT_NO


# --- parser ----------------------------------------------------------------

def _sizes(text: str) -> List[int]:
    try:
        return [int(s) for s in text.split(",") if s]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad size list {text!r}")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fragile", description=__doc__)
    ap.add_argument("--json", action="store_true", help="structured output")
    ap.add_argument("--trace", action="store_true", help="dump the perf trace to stderr")
    ap.add_argument("--log-level", default=os.getenv("LOG_LEVEL", "WARNING"))
    sub = ap.add_subparsers(dest="command", required=True)

    def graph_cmd(name: str, fn: Callable, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("graph", nargs="?", default="-", help="graph file, '-' for stdin")
        p.add_argument("--format", choices=FORMATS, default="edgelist")
        p.set_defaults(func=fn)
        return p

    graph_cmd("check", cmd_check, "fragility verdict and witness")
    p = graph_cmd("colour", cmd_colour, "proper colouring")
    p.add_argument("--m", type=int, default=4)
    p.add_argument("--mode", choices=("constructive", "greedy", "exact"), default="constructive")
    p.add_argument("--verify", action="store_true")
    p.add_argument("--stats", action="store_true")
    p.add_argument("--no-memo", action="store_true")
    graph_cmd("decompose", cmd_decompose, "decomposition tree")
    graph_cmd("stats", cmd_stats, "edge bounds, girth and degeneracy")
    p = graph_cmd("condition", cmd_condition, "run one precolouring query")
    p.add_argument("--cond", required=True, type=str.lower, choices=("c1", "c2", "c3", "c4"))
    p.add_argument("--verts", required=True)
    p.add_argument("--m", type=int, default=4)
    p.add_argument("--verify", action="store_true")

    p = sub.add_parser("gen", help="emit a constructed graph")
    p.add_argument("name", choices=GENERATORS + tuple(sorted(NAMED)))
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--n", type=int, default=30)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--profile", default="mixed")
    p.add_argument("--base", default="k4", help="named input graph")
    p.add_argument("--input", help="input graph file instead of --base")
    p.add_argument("--input-format", choices=FORMATS, default="edgelist")
    p.add_argument("--edge", default="0,1")
    p.add_argument("--search", action="store_true")
    p.add_argument("--budget", type=int, default=2000)
    p.add_argument("--format", dest="out_format", choices=FORMATS, default="edgelist")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", help="oracle cross-check suites")
    p.add_argument("suite", choices=("poljak", "gpp", "gadget", "bounds", "theorem2", "indcut", "engine", "fragile"))
    p.add_argument("--corpus")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int)
    p.add_argument("--no-cache", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="timing table")
    p.add_argument("--sizes", type=_sizes, default=[50, 100, 200, 500])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--no-memo", action="store_true")
    p.set_defaults(func=cmd_bench)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    load_dotenv()
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=args.log_level.upper(), format="%(levelname)s %(name)s: %(message)s")
    out = Output(args.json)
    if args.trace or perf.PERF_DEFAULT:
        perf.enable(args.command)
    try:
        code = args.func(args, out)
    except (EngineError, BudgetExceeded) as e:
        logger.info("%s failed: %s", args.command, e)
        out.error(str(e))
        code = EXIT_NO
    except UnknownName as e:
        out.error(str(e))
        code = EXIT_ERROR
    except (ValueError, OSError) as e:
        out.error(str(e))
        code = EXIT_ERROR
    finally:
        if args.trace:
            sys.stderr.write(perf.dumps(perf.snapshot()) + "\n")
    return code
