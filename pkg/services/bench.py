# services/bench.py
from __future__ import annotations
import logging
import time
from dataclasses import asdict, dataclass
from typing import Any, Dict, List, Sequence

import perf
from constructions import random_fragile, tight_chain
from core import Graph, is_proper
from decomposition import decompose
from engine import Engine, EngineConfig

logger = logging.getLogger(__name__)

DEFAULT_SIZES = (50, 100, 200, 500)


@dataclass
class BenchRow:
    graph: str
    n: int
    e: int
    decompose_ms: float
    colour_ms: float
    tree_nodes: int
    queries: int
    memo_hits: int
    leaf_calls: int
    max_depth: int
    proper: bool

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def bench_graph(name: str, g: Graph, m: int = 4, memo: bool = True) -> BenchRow:
    with perf.span("bench.item", extra={"graph": name, "n": g.n}):
        t0 = time.perf_counter()
        tree = decompose(g)
        t1 = time.perf_counter()
        eng = Engine(g, EngineConfig(m=m, memo_enabled=memo), tree=tree)
        colours = eng.colour()
        t2 = time.perf_counter()
    return BenchRow(
        graph=name, n=g.n, e=g.edge_count,
        decompose_ms=round((t1 - t0) * 1000.0, 1),
        colour_ms=round((t2 - t1) * 1000.0, 1),
        tree_nodes=len(tree.nodes),
        proper=is_proper(g, colours),
        **eng.stats.to_dict(),
    )


def run(sizes: Sequence[int] = DEFAULT_SIZES, seed: int = 0, memo: bool = True) -> List[BenchRow]:
    """Random fragile graph and tight chain per size; sequential so timings stay honest."""
    rows: List[BenchRow] = []
    for n in sizes:
        for name, g in ((f"random-{n}-s{seed}", random_fragile(n, seed)),
                        (f"chain-{max(1, (n - 2) // 2)}", tight_chain(max(1, (n - 2) // 2)))):
            row = bench_graph(name, g, memo=memo)
            logger.info("bench %s n=%d colour %.1fms", name, row.n, row.colour_ms)
            rows.append(row)
    return rows


COLUMNS = ("graph", "n", "e", "decompose_ms", "colour_ms", "tree_nodes", "queries", "memo_hits",
           "leaf_calls", "max_depth", "proper")


def format_rows(rows: List[BenchRow]) -> str:
    table = [COLUMNS] + [tuple(str(getattr(r, c)).lower() if c == "proper" else str(getattr(r, c))
                               for c in COLUMNS) for r in rows]
    widths = [max(len(row[i]) for row in table) for i in range(len(COLUMNS))]
    return "\n".join("  ".join(cell.rjust(w) for cell, w in zip(row, widths)) for row in table) + "\n"
