# decomposition.py
from __future__ import annotations
import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Set, Tuple

import perf
from core import Graph, GraphError, Subgraph, induced_subgraph

logger = logging.getLogger(__name__)


class TooSmall(GraphError):
    pass


class PreconditionViolated(ValueError):
    pass


class DecompositionError(RuntimeError):
    pass


@dataclass(frozen=True)
class Separation:
    cut: Tuple[int, ...]
    side1: FrozenSet[int]
    side2: FrozenSet[int]

    def validate(self, g: Graph) -> None:
        s = set(self.cut)
        if self.side1 | self.side2 != frozenset(g.vertices()) or self.side1 & self.side2 != s:
            raise DecompositionError(f"sides do not meet exactly in {self.cut}")
        only1, only2 = self.side1 - s, self.side2 - s
        if not only1 or not only2:
            raise DecompositionError(f"empty side for cut {self.cut}")
        for v in only1:
            if g.neighbours(v) & only2:
                raise DecompositionError(f"crossing edge at {v} for cut {self.cut}")


def components(g: Graph, removed: Iterable[int] = ()) -> List[List[int]]:
    """Connected components of g minus `removed`, each sorted, ordered by smallest id."""
    gone = set(removed)
    seen = [False] * g.n
    for v in gone:
        seen[v] = True
    out: List[List[int]] = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.adj[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        comp.sort()
        out.append(comp)
    return out


def articulation_points(g: Graph, removed: Optional[int] = None) -> Set[int]:
    """Cut vertices of g (minus `removed`), iterative low-point DFS."""
    disc = [-1] * g.n
    low = [0] * g.n
    aps: Set[int] = set()
    if removed is not None:
        disc[removed] = -2
    clock = 0
    for root in range(g.n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = clock
        clock += 1
        root_children = 0
        stack: List[Tuple[int, int, Iterator[int]]] = [(root, -1, iter(g.adj[root]))]
        while stack:
            u, parent, it = stack[-1]
            advanced = False
            for w in it:
                if disc[w] == -2:
                    continue
                if disc[w] == -1:
                    disc[w] = low[w] = clock
                    clock += 1
                    stack.append((w, u, iter(g.adj[w])))
                    advanced = True
                    break
                if w != parent:
                    low[u] = min(low[u], disc[w])
            if advanced:
                continue
            stack.pop()
            if parent == -1:
                continue
            low[parent] = min(low[parent], low[u])
            if parent == root:
                root_children += 1
            elif low[u] >= disc[parent]:
                aps.add(parent)
        if root_children > 1:
            aps.add(root)
    return aps


def _split(g: Graph, cut: Tuple[int, ...]) -> Optional[Separation]:
    comps = components(g, cut)
    if len(comps) < 2:
        return None
    s = frozenset(cut)
    first = frozenset(comps[0]) | s
    rest = frozenset(v for comp in comps[1:] for v in comp) | s
    return Separation(tuple(sorted(cut)), first, rest)


def find_small_cutset(g: Graph) -> Optional[Separation]:
    if g.n < 2:
        raise TooSmall(f"cutset search needs at least 2 vertices, got {g.n}")
    sep = _split(g, ())
    if sep is not None:
        return sep
    aps = articulation_points(g)
    if aps:
        return _split(g, (min(aps),))
    # the first u whose removal leaves a cut vertex w gives the smallest pair;
    # any w < u would have been found at w already
    for u in range(g.n):
        inner = articulation_points(g, removed=u)
        if inner:
            return _split(g, (u, min(inner)))
    return None


def is_three_connected(g: Graph) -> bool:
    return g.n >= 4 and find_small_cutset(g) is None


def is_cutset(g: Graph, cut: Iterable[int]) -> bool:
    return len(components(g, cut)) >= 2


# --- decomposition tree ----------------------------------------------------

@dataclass
class DecompNode:
    node_id: int
    graph: Graph
    to_parent: Tuple[int, ...]
    from_parent: Dict[int, int]
    to_root: Tuple[int, ...]
    separation: Optional[Separation] = None
    children: Tuple[int, ...] = ()
    parent: Optional[int] = None

    @property
    def is_leaf(self) -> bool:
        return self.separation is None

    @property
    def three_connected(self) -> bool:
        return self.is_leaf and self.graph.n >= 4


@dataclass
class DecompTree:
    nodes: List[DecompNode]
    root_id: int = 0

    @property
    def root(self) -> DecompNode:
        return self.nodes[self.root_id]

    def leaves(self) -> List[DecompNode]:
        return [nd for nd in self.nodes if nd.is_leaf]

    def postorder(self) -> List[DecompNode]:
        out: List[DecompNode] = []
        stack = [(self.root_id, False)]
        while stack:
            nid, done = stack.pop()
            if done:
                out.append(self.nodes[nid])
                continue
            stack.append((nid, True))
            for c in reversed(self.nodes[nid].children):
                stack.append((c, False))
        return out

    def serialize(self) -> str:
        lines = []
        for nd in self.postorder():
            if nd.is_leaf:
                verts = " ".join(str(v) for v in nd.to_root)
                lines.append(f"node {nd.node_id} leaf {verts}".rstrip())
            else:
                cut = " ".join(str(nd.to_root[v]) for v in nd.separation.cut) or "-"
                a, b = nd.children
                lines.append(f"node {nd.node_id} cut {cut} children {a} {b}")
        return "\n".join(lines) + "\n"

    def depth(self) -> int:
        best = 0
        stack = [(self.root_id, 0)]
        while stack:
            nid, d = stack.pop()
            best = max(best, d)
            stack.extend((c, d + 1) for c in self.nodes[nid].children)
        return best


def decompose(g: Graph) -> DecompTree:
    with perf.span("decompose", extra={"n": g.n}):
        root = DecompNode(0, g, tuple(range(g.n)), {v: v for v in range(g.n)}, tuple(range(g.n)))
        nodes = [root]
        agenda = [0]
        while agenda:
            node = nodes[agenda.pop()]
            if node.graph.n <= 3:
                continue
            sep = find_small_cutset(node.graph)
            if sep is None:
                logger.debug("3-connected leaf %s with %d vertices", node.node_id, node.graph.n)
                continue
            sep.validate(node.graph)
            node.separation = sep
            kids = []
            for side in (sep.side1, sep.side2):
                sub: Subgraph = induced_subgraph(node.graph, side)
                child = DecompNode(
                    len(nodes), sub.graph, sub.to_parent, sub.from_parent,
                    tuple(node.to_root[v] for v in sub.to_parent), parent=node.node_id,
                )
                nodes.append(child)
                kids.append(child.node_id)
                agenda.append(child.node_id)
            node.children = tuple(kids)
        perf.mark("decompose.nodes", len(nodes))
        return DecompTree(nodes)


@dataclass
class FragilityReport:
    fragile: bool
    witness: Optional[Tuple[int, ...]]
    tree: DecompTree = field(repr=False)


def is_fragile(g: Graph) -> FragilityReport:
    tree = decompose(g)
    for leaf in tree.leaves():
        if leaf.graph.n >= 4:
            return FragilityReport(False, tuple(sorted(leaf.to_root)), tree)
    return FragilityReport(True, None, tree)


def has_triangle(g: Graph) -> bool:
    for u, v in g.edges():
        if g.neighbours(u) & g.neighbours(v):
            return True
    return False


def find_independent_cutset(g: Graph, trace: Optional[List[Tuple[int, ...]]] = None) -> Tuple[int, ...]:
    """Independent cutset of size <= 2 in a triangle-free fragile graph.

    When the cutset found is an edge uv, no vertex of a component C of G - uv
    sees both ends; a singleton C leaves its only neighbour as a cut vertex,
    otherwise the search moves into G[uv + C], whose independent cutsets
    also separate G. `trace` collects the vertex sets (in g's ids) visited.
    """
    if g.n < 3:
        raise PreconditionViolated(f"need at least 3 vertices, got {g.n}")
    if has_triangle(g):
        raise PreconditionViolated("graph has a triangle")
    if not is_fragile(g).fragile:
        raise PreconditionViolated("graph is not fragile")

    h = g
    to_g: Tuple[int, ...] = tuple(range(g.n))
    while True:
        if trace is not None:
            trace.append(to_g)
        sep = find_small_cutset(h)
        if sep is None:
            raise PreconditionViolated(f"no cutset in a {h.n}-vertex subgraph")
        cut = sep.cut
        if len(cut) < 2 or not h.has_edge(*cut):
            return tuple(sorted(to_g[v] for v in cut))
        u, v = cut
        comp = sorted(sep.side1 - set(cut))
        if len(comp) == 1:
            c = comp[0]
            hub = u if h.has_edge(c, u) else v
            return (to_g[hub],)
        sub = induced_subgraph(h, sep.side1)
        to_g = tuple(to_g[w] for w in sub.to_parent)
        h = sub.graph
