# core.py
from __future__ import annotations
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

import networkx as nx

logger = logging.getLogger(__name__)

FORMATS = ("edgelist", "graph6", "dimacs")


class GraphError(ValueError):
    pass


class SelfLoop(GraphError):
    def __init__(self, u: int):
        super().__init__(f"self-loop on vertex {u}")
        self.u = u


class OutOfRange(GraphError):
    pass


class ParseError(GraphError):
    def __init__(self, message: str, line: Optional[int] = None, offset: Optional[int] = None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if offset is not None:
            where.append(f"offset {offset}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)
        self.line = line
        self.offset = offset


class PartialColouring(GraphError):
    pass


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..n-1.

    `adj[v]` is the sorted tuple of neighbours of v. `labels`, when present,
    maps each vertex to the id it had in the graph it was extracted from
    (root ids after repeated induced_subgraph calls).
    """
    n: int
    adj: Tuple[Tuple[int, ...], ...]
    labels: Optional[Tuple[int, ...]] = None
    _sets: Tuple[FrozenSet[int], ...] = field(default=(), init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_sets", tuple(frozenset(nb) for nb in self.adj))

    def vertices(self) -> range:
        return range(self.n)

    def neighbours(self, v: int) -> FrozenSet[int]:
        return self._sets[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._sets[u]

    def edges(self) -> Iterator[Tuple[int, int]]:
        for u in range(self.n):
            for v in self.adj[u]:
                if u < v:
                    yield (u, v)

    @property
    def edge_count(self) -> int:
        return sum(len(nb) for nb in self.adj) // 2

    def label(self, v: int) -> int:
        return self.labels[v] if self.labels is not None else v

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges())
        return g

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, e={self.edge_count})"


def build_graph(n: int, edges: Iterable[Tuple[int, int]], labels: Optional[Sequence[int]] = None) -> Graph:
    if n < 0:
        raise OutOfRange(f"negative vertex count {n}")
    nbrs: List[set] = [set() for _ in range(n)]
    for u, v in edges:
        if u == v:
            raise SelfLoop(u)
        if not (0 <= u < n and 0 <= v < n):
            raise OutOfRange(f"edge ({u}, {v}) outside 0..{n - 1}")
        nbrs[u].add(v)
        nbrs[v].add(u)
    if labels is not None and len(labels) != n:
        raise OutOfRange(f"{len(labels)} labels for {n} vertices")
    return Graph(n, tuple(tuple(sorted(s)) for s in nbrs), tuple(labels) if labels is not None else None)


def from_networkx(g: nx.Graph) -> Graph:
    order = sorted(g.nodes())
    index = {v: i for i, v in enumerate(order)}
    return build_graph(len(order), ((index[u], index[v]) for u, v in g.edges()))


@dataclass(frozen=True)
class Subgraph:
    graph: Graph
    to_parent: Tuple[int, ...]
    from_parent: Dict[int, int]


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> Subgraph:
    keep = sorted(set(vertices))
    for v in keep:
        if not 0 <= v < g.n:
            raise OutOfRange(f"vertex {v} not in graph of order {g.n}")
    index = {v: i for i, v in enumerate(keep)}
    adj = tuple(tuple(sorted(index[w] for w in g.adj[v] if w in index)) for v in keep)
    labels = tuple(g.label(v) for v in keep)
    return Subgraph(Graph(len(keep), adj, labels), tuple(keep), index)


@dataclass(frozen=True)
class Colouring:
    """Total map vertex -> colour in 1..m, stored by vertex index."""
    m: int
    colours: Tuple[int, ...]

    def __post_init__(self):
        if self.m < 0:
            raise ValueError(f"palette size {self.m}")
        for v, c in enumerate(self.colours):
            if not 1 <= c <= self.m:
                raise ValueError(f"vertex {v} has colour {c} outside 1..{self.m}")

    def __getitem__(self, v: int) -> int:
        return self.colours[v]

    def __len__(self) -> int:
        return len(self.colours)

    def used(self) -> int:
        return len(set(self.colours))

    def to_dict(self) -> Dict[int, int]:
        return {v: c for v, c in enumerate(self.colours)}


@dataclass(frozen=True)
class VertexTuple:
    vertices: Tuple[int, ...]

    @property
    def kind(self) -> str:
        return "pair" if len(self.vertices) == 2 else "triple"

    def distinct(self) -> bool:
        return len(set(self.vertices)) == len(self.vertices)


ColouringLike = Union[Colouring, Mapping[int, int], Sequence[Optional[int]]]


def colour_list(g: Graph, c: ColouringLike) -> List[int]:
    if isinstance(c, Colouring):
        seq: List[Any] = list(c.colours)
    elif isinstance(c, Mapping):
        seq = [c.get(v) for v in range(g.n)]
    else:
        seq = list(c)
    if len(seq) < g.n or any(seq[v] is None for v in range(g.n)):
        raise PartialColouring(f"colouring does not cover all {g.n} vertices")
    return seq


def is_proper(g: Graph, c: ColouringLike) -> bool:
    seq = colour_list(g, c)
    return all(seq[u] != seq[v] for u, v in g.edges())


# --- serialization ---------------------------------------------------------

def parse(text: str, fmt: str = "edgelist") -> Graph:
    if fmt == "edgelist":
        return _parse_edgelist(text)
    if fmt == "graph6":
        return _parse_graph6(text)
    if fmt == "dimacs":
        return _parse_dimacs(text)
    raise ParseError(f"unknown format {fmt!r}")


def emit(g: Graph, fmt: str = "edgelist") -> str:
    if fmt == "edgelist":
        lines = [f"{u} {v}" for u, v in g.edges()]
        # isolated vertices are declared on their own so the order survives
        lines += [str(v) for v in g.vertices() if g.degree(v) == 0]
        return "\n".join(lines) + ("\n" if lines else "")
    if fmt == "graph6":
        return nx.to_graph6_bytes(g.to_networkx(), header=False).decode("ascii").strip() + "\n"
    if fmt == "dimacs":
        lines = [f"p edge {g.n} {g.edge_count}"]
        lines += [f"e {u + 1} {v + 1}" for u, v in g.edges()]
        return "\n".join(lines) + "\n"
    raise ParseError(f"unknown format {fmt!r}")


def _parse_edgelist(text: str) -> Graph:
    edges: List[Tuple[int, int]] = []
    top = -1
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) > 2:
            raise ParseError(f"expected 'u v', got {raw.strip()!r}", line=lineno)
        try:
            ids = [int(p) for p in parts]
        except ValueError:
            raise ParseError(f"non-integer vertex id in {raw.strip()!r}", line=lineno)
        if any(i < 0 for i in ids):
            raise ParseError("negative vertex id", line=lineno)
        top = max(top, *ids)
        if len(ids) == 2:
            if ids[0] == ids[1]:
                raise ParseError(f"self-loop on vertex {ids[0]}", line=lineno)
            edges.append((ids[0], ids[1]))
    return build_graph(top + 1, edges)


def _parse_graph6(text: str) -> Graph:
    body = next((ln.strip() for ln in text.splitlines() if ln.strip()), "")
    if not body:
        raise ParseError("empty graph6 input", line=1, offset=0)
    skip = 10 if body.startswith(">>graph6<<") else 0
    for i, ch in enumerate(body.encode("ascii", errors="replace")[skip:], start=skip):
        if not 63 <= ch <= 126:
            raise ParseError(f"invalid graph6 byte {chr(ch)!r}", line=1, offset=i)
    try:
        g = nx.from_graph6_bytes(body.encode("ascii"))
    except (nx.NetworkXError, ValueError) as e:
        raise ParseError(f"bad graph6: {e}", line=1)
    return from_networkx(g)


def _parse_dimacs(text: str) -> Graph:
    n: Optional[int] = None
    edges: List[Tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if len(parts) < 4 or parts[1] not in ("edge", "col"):
                raise ParseError(f"bad problem line {line!r}", line=lineno)
            try:
                n = int(parts[2])
            except ValueError:
                raise ParseError("non-integer vertex count", line=lineno)
        elif parts[0] == "e":
            if n is None:
                raise ParseError("edge before 'p edge' header", line=lineno)
            if len(parts) != 3:
                raise ParseError(f"bad edge line {line!r}", line=lineno)
            try:
                u, v = int(parts[1]) - 1, int(parts[2]) - 1
            except ValueError:
                raise ParseError("non-integer vertex id", line=lineno)
            if not (0 <= u < n and 0 <= v < n):
                raise ParseError(f"vertex outside 1..{n}", line=lineno)
            if u == v:
                raise ParseError(f"self-loop on vertex {u + 1}", line=lineno)
            edges.append((u, v))
        else:
            raise ParseError(f"unknown line type {parts[0]!r}", line=lineno)
    if n is None:
        raise ParseError("missing 'p edge' header")
    return build_graph(n, edges)
