# extremal.py
from __future__ import annotations
import heapq
import logging
import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple, Union

from core import Colouring, Graph

logger = logging.getLogger(__name__)

Girth = Union[int, float]


def girth(g: Graph) -> Girth:
    """Shortest cycle length by BFS from every vertex; math.inf for forests."""
    best: Girth = math.inf
    for s in g.vertices():
        dist = [-1] * g.n
        parent = [-1] * g.n
        dist[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            if 2 * dist[u] + 1 >= best:
                break
            for w in g.adj[u]:
                if dist[w] == -1:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif w != parent[u]:
                    best = min(best, dist[u] + dist[w] + 1)
    return best


def degeneracy(g: Graph) -> Tuple[int, List[int]]:
    """Min-degree peeling, smallest id first among ties."""
    deg = [g.degree(v) for v in g.vertices()]
    heap = [(deg[v], v) for v in g.vertices()]
    heapq.heapify(heap)
    removed = [False] * g.n
    order: List[int] = []
    worst = 0
    while heap:
        d, v = heapq.heappop(heap)
        if removed[v] or d != deg[v]:
            continue
        removed[v] = True
        order.append(v)
        worst = max(worst, d)
        for w in g.adj[v]:
            if not removed[w]:
                deg[w] -= 1
                heapq.heappush(heap, (deg[w], w))
    return worst, order


def greedy_colour(g: Graph) -> Colouring:
    _, order = degeneracy(g)
    colours = [0] * g.n
    for v in reversed(order):
        taken = {colours[w] for w in g.adj[v] if colours[w]}
        c = 1
        while c in taken:
            c += 1
        colours[v] = c
    return Colouring(max(colours, default=0), tuple(colours))


@dataclass
class BoundReport:
    n: int
    e: int
    bound_general: Fraction
    bound_girth4: Fraction
    girth: Girth
    degeneracy: int
    peel_order: List[int] = field(repr=False)

    @property
    def general_applies(self) -> bool:
        return self.n >= 4

    @property
    def girth4_applies(self) -> bool:
        return self.n >= 3 and self.girth >= 4

    @property
    def exceeds_general(self) -> bool:
        return self.general_applies and self.e > self.bound_general

    @property
    def exceeds_girth4(self) -> bool:
        return self.girth4_applies and self.e > self.bound_girth4

    @property
    def tight_general(self) -> bool:
        return self.general_applies and self.e == self.bound_general

    @property
    def tight_girth4(self) -> bool:
        return self.girth4_applies and self.e == self.bound_girth4

    def contradiction(self, fragile: bool) -> bool:
        """A fragile graph above either bound would refute the edge bounds."""
        return fragile and (self.exceeds_general or self.exceeds_girth4)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "e": self.e,
            "bound_general": str(self.bound_general),
            "bound_girth4": str(self.bound_girth4),
            "girth": None if self.girth == math.inf else self.girth,
            "degeneracy": self.degeneracy,
            "tight_general": self.tight_general,
            "tight_girth4": self.tight_girth4,
            "exceeds_general": self.exceeds_general,
            "exceeds_girth4": self.exceeds_girth4,
        }

    def to_text(self) -> str:
        rows = [(k, "inf" if v is None and k == "girth" else str(v).lower() if isinstance(v, bool) else str(v))
                for k, v in self.to_dict().items()]
        width = max(len(k) for k, _ in rows)
        return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows) + "\n"


def check_edge_bound(g: Graph, fragile: Optional[bool] = None) -> BoundReport:
    n, e = g.n, g.edge_count
    d, order = degeneracy(g)
    report = BoundReport(
        n=n, e=e,
        bound_general=Fraction(5, 2) * n - 5,
        bound_girth4=Fraction(2 * n - 4),
        girth=girth(g), degeneracy=d, peel_order=order,
    )
    if fragile is not None and report.contradiction(fragile):
        logger.error("fragile graph exceeds an edge bound: n=%d e=%d", n, e)
    return report
