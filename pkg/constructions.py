# constructions.py
from __future__ import annotations
import logging
import random
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import perf
from core import Graph, build_graph
from decomposition import components, is_fragile

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]


class NotCubic(ValueError):
    pass


class NotAnEdge(ValueError):
    pass


class UnknownName(KeyError):
    def __init__(self, name: str):
        super().__init__(name)
        self.name = name

    def __str__(self) -> str:
        return f"unknown graph name {self.name!r} (known: {', '.join(sorted(NAMED))})"


@dataclass
class SubdivisionMap:
    """Original edge (u < v) -> the two path vertices, and for G'' the apex x'."""
    paths: Dict[Edge, Tuple[int, int]] = field(default_factory=dict)
    primes: Dict[Edge, int] = field(default_factory=dict)


@dataclass(frozen=True)
class GadgetInstance:
    graph: Graph
    terminal_a: int
    terminal_b: int


# --- subdivisions ------------------------------------------------------------

def double_subdivide(g: Graph) -> Tuple[Graph, SubdivisionMap]:
    """Each edge uv becomes the induced path u - x_uv - y_uv - v."""
    smap = SubdivisionMap()
    edges: List[Edge] = []
    for i, (u, v) in enumerate(g.edges()):
        x, y = g.n + 2 * i, g.n + 2 * i + 1
        smap.paths[(u, v)] = (x, y)
        edges += [(u, x), (x, y), (y, v)]
    return build_graph(g.n + 2 * len(smap.paths), edges), smap


def build_g_double_prime(g: Graph) -> Tuple[Graph, SubdivisionMap]:
    """Double subdivision plus a vertex x'_uv on u, x_uv and y_uv for every edge."""
    sub, smap = double_subdivide(g)
    base = sub.n
    edges = list(sub.edges())
    for i, (e, (x, y)) in enumerate(smap.paths.items()):
        apex = base + i
        smap.primes[e] = apex
        edges += [(apex, e[0]), (apex, x), (apex, y)]
    return build_graph(base + len(smap.paths), edges), smap


# --- not-equal gadget ------------------------------------------------------

# a=0 b=1; every proper 3-colouring separates a from b
_GADGET_N = 13
_GADGET_EDGES: Tuple[Edge, ...] = (
    (1, 2), (0, 3), (2, 3), (1, 4), (3, 4), (0, 5), (4, 5), (2, 6), (5, 6), (2, 7),
    (4, 8), (7, 8), (2, 9), (8, 9), (4, 10), (9, 10), (7, 11), (10, 11), (6, 12),
    (3, 12), (11, 12),
)


def neq_gadget() -> GadgetInstance:
    return GadgetInstance(build_graph(_GADGET_N, _GADGET_EDGES), 0, 1)


def gadget_replacement(g: Graph) -> Tuple[Graph, Dict[Edge, Tuple[int, ...]]]:
    """Swap every edge uv for a gadget copy with a = u and b = v.

    Internal gadget vertices of the i-th edge (sorted order) get the id block
    starting at n + i * (gadget order - 2); the provenance map lists the block.
    """
    gadget = neq_gadget()
    gg = gadget.graph
    inner = [w for w in gg.vertices() if w not in (gadget.terminal_a, gadget.terminal_b)]
    width = len(inner)
    edges: List[Edge] = []
    provenance: Dict[Edge, Tuple[int, ...]] = {}
    for i, (u, v) in enumerate(g.edges()):
        ids = {gadget.terminal_a: u, gadget.terminal_b: v}
        for j, w in enumerate(inner):
            ids[w] = g.n + i * width + j
        provenance[(u, v)] = tuple(ids[w] for w in inner)
        edges += [(ids[p], ids[q]) for p, q in gg.edges()]
    return build_graph(g.n + width * len(provenance), edges), provenance


def replace_edges_with_gadget(g: Graph) -> Graph:
    return gadget_replacement(g)[0]


def not_three_colourable_fragile() -> Graph:
    """Triangle-free fragile graph with chromatic number 4."""
    return replace_edges_with_gadget(named("k4"))


# --- cubic girth pair ------------------------------------------------------

def cubic_girth_pair(g: Graph, uv: Edge) -> Graph:
    """Two copies of g - uv joined by u-u' and v-v'."""
    bad = [v for v in g.vertices() if g.degree(v) != 3]
    if bad:
        raise NotCubic(f"vertex {bad[0]} has degree {g.degree(bad[0])}")
    if len(components(g)) != 1:
        raise NotCubic("graph is not connected")
    u, v = uv
    if not (0 <= u < g.n and 0 <= v < g.n) or not g.has_edge(u, v):
        raise NotAnEdge(f"{uv} is not an edge")
    n = g.n
    kept = [e for e in g.edges() if set(e) != {u, v}]
    edges = kept + [(a + n, b + n) for a, b in kept] + [(u, u + n), (v, v + n)]
    return build_graph(2 * n, edges)


# --- generators ------------------------------------------------------------

def tight_chain(k: int) -> Graph:
    """k copies of K4 - e sharing the nonadjacent pair {2, 3}; meets |E| = 2.5|V| - 5."""
    if k < 1:
        raise ValueError(f"tight_chain needs k >= 1, got {k}")
    edges: List[Edge] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]
    n = 4
    for _ in range(k - 1):
        a, b = n, n + 1
        edges += [(2, a), (2, b), (3, a), (3, b), (a, b)]
        n += 2
    return build_graph(n, edges)


# small fragile pieces as (order, edges)
PIECES: Dict[str, Tuple[int, Tuple[Edge, ...]]] = {
    "k2": (2, ((0, 1),)),
    "p3": (3, ((0, 1), (1, 2))),
    "k3": (3, ((0, 1), (0, 2), (1, 2))),
    "c4": (4, ((0, 1), (1, 2), (2, 3), (0, 3))),
    "c5": (5, ((0, 1), (1, 2), (2, 3), (3, 4), (0, 4))),
    "k4-e": (4, ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3))),
    "k23": (5, ((0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4))),
}

# piece weights, then weights of gluing on 0, 1 or 2 vertices
PROFILES: Dict[str, Tuple[Dict[str, int], Tuple[int, int, int]]] = {
    "mixed": ({"k2": 2, "p3": 1, "k3": 2, "c4": 2, "c5": 2, "k4-e": 3, "k23": 1}, (1, 3, 6)),
    "sparse": ({"k2": 3, "p3": 2, "c4": 2, "c5": 3}, (1, 4, 3)),
    "dense": ({"k3": 1, "k4-e": 5, "k23": 2}, (0, 1, 6)),
}


class _Builder:
    def __init__(self, rng: random.Random):
        self.rng = rng
        self.n = 0
        self.adj: List[set] = []

    def edges(self) -> List[Edge]:
        return [(u, w) for u in range(self.n) for w in self.adj[u] if u < w]

    def _pair(self, joined: bool, tries: int = 24) -> Optional[Edge]:
        """Existing pair whose adjacency matches `joined`."""
        if self.n < 2:
            return None
        for _ in range(tries):
            u, w = self.rng.sample(range(self.n), 2)
            if (w in self.adj[u]) == joined:
                return u, w
        return None

    def anchor(self, order: int, piece_edges: Sequence[Edge], arity: int) -> Dict[int, int]:
        """Piece vertices to identify with existing ones; a 2-anchor falls back to 1 when no pair fits."""
        rng = self.rng
        pv = list(range(order))
        if arity == 2:
            p, q = rng.sample(pv, 2)
            joined = any({p, q} == set(e) for e in piece_edges)
            pair = self._pair(joined)
            if pair is not None:
                return {p: pair[0], q: pair[1]}
            arity = 1
        if arity == 1:
            return {rng.choice(pv): rng.randrange(self.n)}
        return {}

    def attach(self, order: int, piece_edges: Sequence[Edge], ids: Dict[int, int]) -> None:
        """Add a copy of the piece; vertices missing from `ids` become new."""
        ids = dict(ids)
        for v in range(order):
            if v not in ids:
                ids[v] = self.n
                self.n += 1
                self.adj.append(set())
        for a, b in piece_edges:
            u, w = ids[a], ids[b]
            self.adj[u].add(w)
            self.adj[w].add(u)

    def glue(self, order: int, piece_edges: Sequence[Edge], arity: int) -> None:
        self.attach(order, piece_edges, self.anchor(order, piece_edges, arity))


def random_fragile(n: int, seed: int = 0, profile: str = "mixed") -> Graph:
    """Seeded 2-sum tree of small fragile pieces with exactly n vertices."""
    if n < 1:
        raise ValueError(f"random_fragile needs n >= 1, got {n}")
    if profile not in PROFILES:
        raise ValueError(f"unknown profile {profile!r}")
    weights, arity_weights = PROFILES[profile]
    rng = random.Random(seed)
    b = _Builder(rng)
    b.n, b.adj = 1, [set()]
    names = sorted(weights)
    while b.n < n:
        room = n - b.n
        name = rng.choices(names, weights=[weights[k] for k in names])[0]
        order, piece_edges = PIECES[name]
        arity = rng.choices((0, 1, 2), weights=arity_weights)[0]
        ids = b.anchor(order, piece_edges, min(arity, b.n, order))
        if order - len(ids) > room:
            order, piece_edges = PIECES["k2"]
            ids = b.anchor(order, piece_edges, 1 if room == 1 else 0)
        b.attach(order, piece_edges, ids)
    return build_graph(b.n, b.edges())


def search_mindeg4(seed: int = 0, budget: int = 2000, max_order: int = 40) -> Optional[Graph]:
    """Look for a fragile graph of minimum degree 4.

    Grows a graph by gluing K4 - e on nonadjacent pairs and adding edges
    between low-degree vertices whenever fragility survives. Returns a
    certified graph, or None when the budget runs out.
    """
    rng = random.Random(seed)
    order, k4e = PIECES["k4-e"]
    with perf.span("constructions.mindeg4", extra={"seed": seed, "budget": budget}):
        b = _Builder(rng)
        b.glue(order, k4e, 0)
        for step in range(budget):
            low = [v for v in range(b.n) if len(b.adj[v]) < 4]
            if not low:
                g = build_graph(b.n, b.edges())
                if is_fragile(g).fragile:
                    logger.info("min-degree-4 fragile graph on %d vertices after %d steps", g.n, step)
                    return g
                return None
            if b.n > max_order:
                b = _Builder(rng)
                b.glue(order, k4e, 0)
                continue
            v = rng.choice(low)
            partners = [w for w in low if w != v and w not in b.adj[v]]
            if partners:
                w = rng.choice(partners)
                b.adj[v].add(w)
                b.adj[w].add(v)
                if is_fragile(build_graph(b.n, b.edges())).fragile:
                    continue
                b.adj[v].discard(w)
                b.adj[w].discard(v)
            far = [w for w in range(b.n) if w != v and w not in b.adj[v]]
            if not far:
                continue
            w = rng.choice(far)
            a, c = b.n, b.n + 1
            b.n += 2
            b.adj += [set(), set()]
            for x, y in ((v, a), (v, c), (w, a), (w, c), (a, c)):
                b.adj[x].add(y)
                b.adj[y].add(x)
    logger.info("no min-degree-4 fragile graph within %d steps (seed %d)", budget, seed)
    return None


# --- named graphs ----------------------------------------------------------

def _complete(n: int) -> Graph:
    return build_graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def _cycle(n: int) -> Graph:
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def _petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return build_graph(10, outer + spokes + inner)


def _wheel(rim: int) -> Graph:
    return build_graph(rim + 1, [(i, (i + 1) % rim) for i in range(rim)] + [(rim, i) for i in range(rim)])


NAMED: Dict[str, Callable[[], Graph]] = {
    "k3": lambda: _complete(3),
    "k4": lambda: _complete(4),
    "k5": lambda: _complete(5),
    "k4-e": lambda: tight_chain(1),
    "c4": lambda: _cycle(4),
    "c5": lambda: _cycle(5),
    "petersen": _petersen,
    "petersen-double": lambda: double_subdivide(_petersen())[0],
    "wheel5": lambda: _wheel(5),
    "gadget": lambda: neq_gadget().graph,
    "chi4-trianglefree": not_three_colourable_fragile,
}


def named(name: str) -> Graph:
    try:
        make = NAMED[name.lower()]
    except KeyError:
        raise UnknownName(name) from None
    return make()
