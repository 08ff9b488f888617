# engine.py
"""Precolouring queries on a decomposition tree.

A query asks for a proper m-colouring of a tree node's graph meeting one
of four conditions on a pair or triple of its vertices:

    C1  c(x) == c(y)                 x, y nonadjacent
    C2  c(x) != c(y)
    C3  c(x) not in {c(y), c(z)}
    C4  |{c(x), c(y), c(z)}| == 2    x, y, z not a triangle

Leaves are answered directly, inner nodes by combining answers for their
two sides across a cutset of size at most 2. Every combination step glues
two side colourings after permuting the palette of the second one.
"""
from __future__ import annotations
import itertools
import logging
import os
from dataclasses import dataclass, field
from typing import Callable, Dict, Generator, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import perf
from core import Colouring, Graph, VertexTuple, colour_list, is_proper
from decomposition import DecompNode, DecompTree, decompose
from oracle import BudgetExceeded, exact_colour

logger = logging.getLogger(__name__)

LEAF_BUDGET = int(os.getenv("ENGINE_LEAF_BUDGET", "500000"))
VERIFY_DEFAULT = os.getenv("ENGINE_VERIFY", "0") == "1"
MEMO_DEFAULT = os.getenv("ENGINE_MEMO", "1") == "1"

C1, C2, C3, C4 = "C1", "C2", "C3", "C4"
KINDS = (C1, C2, C3, C4)
ARITY = {C1: 2, C2: 2, C3: 3, C4: 3}


class EngineError(RuntimeError):
    pass


class NotMFragile(EngineError):
    def __init__(self, message: str, leaf: Optional[Tuple[int, ...]] = None):
        super().__init__(message)
        self.leaf = leaf


class OracleBudget(EngineError):
    pass


class InternalInvariant(EngineError):
    pass


class ConditionInvalid(ValueError):
    pass


@dataclass(frozen=True)
class Condition:
    kind: str
    vertices: Tuple[int, ...]

    @property
    def tuple(self) -> VertexTuple:
        return VertexTuple(self.vertices)

    def canonical(self) -> Tuple[int, ...]:
        if self.kind == C3:
            x, y, z = self.vertices
            return (x,) + tuple(sorted((y, z)))
        return tuple(sorted(self.vertices))

    def __str__(self) -> str:
        return f"{self.kind}({', '.join(str(v) for v in self.vertices)})"


def condition(kind: str, *vertices: int) -> Condition:
    return Condition(kind.upper(), tuple(vertices))


def validate_condition(g: Graph, cond: Condition) -> None:
    if cond.kind not in KINDS:
        raise ConditionInvalid(f"unknown condition kind {cond.kind!r}")
    vs = cond.vertices
    if len(vs) != ARITY[cond.kind]:
        raise ConditionInvalid(f"{cond.kind} takes {ARITY[cond.kind]} vertices, got {len(vs)}")
    for v in vs:
        if not 0 <= v < g.n:
            raise ConditionInvalid(f"vertex {v} not in graph of order {g.n}")
    if not cond.tuple.distinct():
        raise ConditionInvalid(f"{cond} repeats a vertex")
    if cond.kind == C1 and g.has_edge(*vs):
        raise ConditionInvalid(f"{cond} asks an edge to be monochromatic")
    if cond.kind == C4:
        x, y, z = vs
        if g.has_edge(x, y) and g.has_edge(x, z) and g.has_edge(y, z):
            raise ConditionInvalid(f"{cond} is a triangle")


def holds(kind: str, values: Sequence[int]) -> bool:
    if kind == C1:
        return values[0] == values[1]
    if kind == C2:
        return values[0] != values[1]
    if kind == C3:
        return values[0] != values[1] and values[0] != values[2]
    return len(set(values)) == 2


def check_condition(g: Graph, cond: Condition, c) -> bool:
    seq = colour_list(g, c)
    return is_proper(g, seq) and holds(cond.kind, [seq[v] for v in cond.vertices])


# --- palette permutations --------------------------------------------------

@dataclass(frozen=True)
class ColourPermutation:
    images: Tuple[int, ...]  # images[c - 1] is where colour c goes

    @property
    def m(self) -> int:
        return len(self.images)

    def __call__(self, colour: int) -> int:
        return self.images[colour - 1]

    def apply(self, c: Colouring) -> Colouring:
        return Colouring(c.m, tuple(self.images[x - 1] for x in c.colours))

    def compose(self, other: "ColourPermutation") -> "ColourPermutation":
        """self after other."""
        return ColourPermutation(tuple(self.images[other.images[i] - 1] for i in range(self.m)))

    @classmethod
    def identity(cls, m: int) -> "ColourPermutation":
        return cls(tuple(range(1, m + 1)))


def _complete(partial: Mapping[int, int], m: int) -> ColourPermutation:
    free = set(range(1, m + 1)) - set(partial.values())
    images = dict(partial)
    for c in range(1, m + 1):
        if c not in images and c in free:
            images[c] = c
            free.discard(c)
    for c in range(1, m + 1):
        if c not in images:
            images[c] = min(free)
            free.discard(images[c])
    return ColourPermutation(tuple(images[c] for c in range(1, m + 1)))


Required = Mapping[int, Union[int, Iterable[int]]]


def match_pattern(
    c: Union[Colouring, Mapping[int, int]],
    required: Required,
    m: Optional[int] = None,
    watch: Iterable[int] = (),
    accept: Optional[Callable[[ColourPermutation], bool]] = None,
) -> Optional[ColourPermutation]:
    """Palette permutation sending each required vertex into its allowed colours.

    Images of the colours carried by required (and watched) vertices are
    tried in ascending order, source colours taken smallest first; the rest
    of the palette stays put where it can. `accept`, when given, is asked
    about each complete candidate and may reject it.
    """
    if isinstance(c, Colouring):
        m = c.m if m is None else m
        colours: Mapping[int, int] = c.to_dict()
    else:
        colours = c
        if m is None:
            m = max(colours.values(), default=0)
    allowed: Dict[int, set] = {}
    for v, want in required.items():
        options = {want} if isinstance(want, int) else set(want)
        src = colours[v]
        allowed[src] = allowed[src] & options if src in allowed else options
    sources = sorted(set(allowed) | {colours[v] for v in watch})
    choice: Dict[int, int] = {}

    def search(i: int) -> Optional[ColourPermutation]:
        if i == len(sources):
            pi = _complete(choice, m)
            return pi if accept is None or accept(pi) else None
        src = sources[i]
        taken = set(choice.values())
        for target in sorted(allowed.get(src, range(1, m + 1))):
            if target in taken or not 1 <= target <= m:
                continue
            choice[src] = target
            found = search(i + 1)
            if found is not None:
                return found
            del choice[src]
        return None

    return search(0)


# --- engine ----------------------------------------------------------------

@dataclass
class EngineConfig:
    m: int = 4
    verify_each_step: bool = VERIFY_DEFAULT
    memo_enabled: bool = MEMO_DEFAULT
    leaf_budget: int = LEAF_BUDGET

    def __post_init__(self):
        if self.m < 4:
            raise ValueError(f"palette size must be at least 4, got {self.m}")


@dataclass(frozen=True)
class MemoKey:
    node: int
    kind: str
    tuple: Tuple[int, ...]

    @classmethod
    def of(cls, node: int, cond: Condition) -> "MemoKey":
        return cls(node, cond.kind, cond.canonical())


@dataclass
class EngineStats:
    queries: int = 0
    memo_hits: int = 0
    leaf_calls: int = 0
    max_depth: int = 0

    def to_dict(self) -> Dict[str, int]:
        return {"queries": self.queries, "memo_hits": self.memo_hits,
                "leaf_calls": self.leaf_calls, "max_depth": self.max_depth}


@dataclass(frozen=True)
class Query:
    node: int
    cond: Condition


Side = Dict[int, int]  # node-local vertex -> colour
Task = Generator[Query, Tuple[int, ...], Tuple[int, ...]]


class Engine:
    """Answers C1-C4 queries for one graph and one palette size."""

    def __init__(self, g: Graph, config: Optional[EngineConfig] = None, tree: Optional[DecompTree] = None):
        self.graph = g
        self.config = config or EngineConfig()
        self.m = self.config.m
        self.tree = tree if tree is not None else decompose(g)
        self.memo: Dict[MemoKey, Tuple[int, ...]] = {}
        self.stats = EngineStats()
        self._leaf_cache: Dict[int, Tuple[int, ...]] = {}

    # public -------------------------------------------------------------

    def satisfy(self, cond: Condition, node_id: Optional[int] = None) -> Colouring:
        nid = self.tree.root_id if node_id is None else node_id
        validate_condition(self.tree.nodes[nid].graph, cond)
        before = (self.stats.queries, self.stats.memo_hits)
        with perf.span("engine.satisfy", extra={"cond": str(cond)}):
            result = self._run(nid, cond)
        perf.mark("engine.queries", self.stats.queries - before[0])
        perf.mark("engine.memo_hits", self.stats.memo_hits - before[1])
        logger.debug("%s answered with %d queries", cond, self.stats.queries - before[0])
        return Colouring(self.m, result)

    def colour(self) -> Colouring:
        root = self.tree.root
        if root.graph.n <= 1:
            return Colouring(self.m, (1,) * root.graph.n)
        return self.satisfy(Condition(C2, (0, 1)))

    # driver ---------------------------------------------------------------

    def _run(self, nid: int, cond: Condition) -> Tuple[int, ...]:
        key = MemoKey.of(nid, cond)
        if self.config.memo_enabled and key in self.memo:
            self.stats.memo_hits += 1
            return self.memo[key]
        stack: List[Tuple[Task, MemoKey, int, Condition]] = [(self._task(nid, cond), key, nid, cond)]
        sent: Optional[Tuple[int, ...]] = None
        result: Tuple[int, ...] = ()
        while stack:
            self.stats.max_depth = max(self.stats.max_depth, len(stack))
            gen, key, qnid, qcond = stack[-1]
            try:
                query = gen.send(sent)
            except StopIteration as stop:
                stack.pop()
                result = self._store(key, qnid, qcond, stop.value)
                sent = result
                continue
            qkey = MemoKey.of(query.node, query.cond)
            if self.config.memo_enabled and qkey in self.memo:
                self.stats.memo_hits += 1
                sent = self.memo[qkey]
                continue
            stack.append((self._task(query.node, query.cond), qkey, query.node, query.cond))
            sent = None
        return result

    def _store(self, key: MemoKey, nid: int, cond: Condition, colours: Tuple[int, ...]) -> Tuple[int, ...]:
        if self.config.verify_each_step:
            g = self.tree.nodes[nid].graph
            if not check_condition(g, cond, colours):
                raise InternalInvariant(f"node {nid}: answer to {cond} fails verification")
        if self.config.memo_enabled:
            self.memo[key] = colours
        return colours

    # query handling -------------------------------------------------------

    def _task(self, nid: int, cond: Condition) -> Task:
        self.stats.queries += 1
        node = self.tree.nodes[nid]
        if node.graph.n <= 3:
            return self._small(node.graph, cond)
        if node.is_leaf:
            return self._leaf(node, cond)
        sep = node.separation
        xs = set(cond.vertices)
        for side in (0, 1):
            if xs <= (sep.side1, sep.side2)[side]:
                return (yield from self._same_side(node, cond, side))
        if len(sep.cut) == 0:
            return (yield from self._crossing_disjoint(node, cond))
        if len(sep.cut) == 1:
            return (yield from self._crossing_cut_vertex(node, cond))
        if cond.kind == C1:
            return (yield from self._equal_across(node, cond))
        if cond.kind == C3:
            return (yield from self._avoid_across(node, cond))
        if cond.kind == C2:
            # any third vertex w: avoiding both y and w also separates x from y
            x, y = cond.vertices
            w = next(v for v in node.graph.vertices() if v not in (x, y))
            return (yield Query(nid, Condition(C3, (x, y, w))))
        return (yield from self._two_colours_across(node, cond))

    def _small(self, g: Graph, cond: Condition) -> Tuple[int, ...]:
        for colours in itertools.product(range(1, self.m + 1), repeat=g.n):
            if check_condition(g, cond, colours):
                return colours
        raise InternalInvariant(f"no colouring of a {g.n}-vertex graph meets {cond}")

    def _leaf_colouring(self, node: DecompNode) -> Tuple[int, ...]:
        if node.node_id in self._leaf_cache:
            return self._leaf_cache[node.node_id]
        self.stats.leaf_calls += 1
        try:
            found = exact_colour(node.graph, self.m - 1, budget=self.config.leaf_budget, cap=None)
        except BudgetExceeded as e:
            raise OracleBudget(f"leaf {node.node_id} ({node.graph.n} vertices): {e}") from e
        if found is None:
            leaf = tuple(sorted(node.to_root))
            raise NotMFragile(f"3-connected subgraph on {len(leaf)} vertices needs more than "
                              f"{self.m - 1} colours", leaf)
        self._leaf_cache[node.node_id] = found.colours
        return found.colours

    def _leaf(self, node: DecompNode, cond: Condition) -> Tuple[int, ...]:
        colours = list(self._leaf_colouring(node))
        spare = self.m
        g = node.graph
        vs = cond.vertices
        if cond.kind == C1:
            colours[vs[0]] = colours[vs[1]] = spare
        elif cond.kind == C2:
            if colours[vs[0]] == colours[vs[1]]:
                colours[vs[0]] = spare
        elif cond.kind == C3:
            colours[vs[0]] = spare
        else:
            for a, b in itertools.combinations(vs, 2):
                if not g.has_edge(a, b):
                    colours[a] = colours[b] = spare
                    break
        return tuple(colours)

    # gluing ---------------------------------------------------------------

    def _sides(self, node: DecompNode) -> Tuple[DecompNode, DecompNode]:
        a, b = node.children
        return self.tree.nodes[a], self.tree.nodes[b]

    def _ask(self, child: DecompNode, kind: str, *vertices: int) -> Query:
        return Query(child.node_id, Condition(kind, tuple(child.from_parent[v] for v in vertices)))

    def _any(self, child: DecompNode) -> Generator[Query, Tuple[int, ...], Side]:
        if child.graph.n >= 2:
            got = yield Query(child.node_id, Condition(C2, (0, 1)))
        else:
            got = (1,) * child.graph.n
        return self._lift(child, got)

    def _get(self, child: DecompNode, kind: str, *vertices: int) -> Generator[Query, Tuple[int, ...], Side]:
        got = yield self._ask(child, kind, *vertices)
        return self._lift(child, got)

    @staticmethod
    def _lift(child: DecompNode, colours: Sequence[int]) -> Side:
        return {child.to_parent[i]: c for i, c in enumerate(colours)}

    def _glue(self, node: DecompNode, cond: Condition, first: Side, second: Side) -> Tuple[int, ...]:
        """Union of two side colourings, the second recoloured to agree on the cut and meet cond."""
        cut = node.separation.cut
        loose = [v for v in cond.vertices if v not in first]

        def meets(pi: ColourPermutation) -> bool:
            values = [first[v] if v in first else pi(second[v]) for v in cond.vertices]
            return holds(cond.kind, values)

        pi = match_pattern(second, {s: first[s] for s in cut}, self.m, watch=loose, accept=meets)
        if pi is None:
            raise InternalInvariant(f"node {node.node_id}: sides cannot be glued for {cond}")
        return tuple(first[v] if v in first else pi(second[v]) for v in range(node.graph.n))

    def _agree(self, node: DecompNode, side: DecompNode, first: Side) -> Generator[Query, Tuple[int, ...], Side]:
        """Colouring of `side` whose cut colours can be matched to `first`."""
        cut = node.separation.cut
        if len(cut) < 2:
            return (yield from self._any(side))
        u, v = cut
        kind = C1 if first[u] == first[v] else C2
        return (yield from self._get(side, kind, u, v))

    # same side ------------------------------------------------------------

    def _same_side(self, node: DecompNode, cond: Condition, which: int) -> Task:
        sides = self._sides(node)
        home, other = sides[which], sides[1 - which]
        first = yield from self._get(home, cond.kind, *cond.vertices)
        second = yield from self._agree(node, other, first)
        return self._glue(node, cond, first, second)

    # crossing, cutset of size 0 or 1 -------------------------------------

    def _crossing_disjoint(self, node: DecompNode, cond: Condition) -> Task:
        a, b = self._sides(node)
        parts = []
        for side in (a, b):
            verts = [v for v in cond.vertices if v in side.from_parent]
            if cond.kind == C3 and cond.vertices[0] in side.from_parent and len(verts) == 2:
                parts.append((yield from self._get(side, C2, *verts)))
            else:
                parts.append((yield from self._any(side)))
        return self._glue(node, cond, parts[0], parts[1])

    def _crossing_cut_vertex(self, node: DecompNode, cond: Condition) -> Task:
        """Per-side subqueries anchored at the cut vertex u.

        C1(x, y): both sides keep x, y off u's colour so one permutation
        matches y to x. C2: x's side keeps x off u. C3 with x = u: each side
        keeps its vertex off u; otherwise x's side avoids u and any partner
        on its side. C4 containing u: one side keeps its vertex off u; a
        lone vertex on one side is kept off u there.
        """
        (u,) = node.separation.cut
        a, b = self._sides(node)
        kind, vs = cond.kind, cond.vertices

        def only(side: DecompNode) -> List[int]:
            return [v for v in vs if v in side.from_parent and v != u]

        def ask_or_any(side: DecompNode, sub: Optional[Tuple[str, Tuple[int, ...]]]):
            if sub is None:
                return (yield from self._any(side))
            return (yield from self._get(side, sub[0], *sub[1]))

        subs: List[Optional[Tuple[str, Tuple[int, ...]]]] = [None, None]
        if kind in (C1, C2):
            for i, side in enumerate((a, b)):
                mine = only(side)
                if kind == C1 or vs[0] in mine:
                    subs[i] = (C2, (mine[0], u))
        elif kind == C3:
            x = vs[0]
            for i, side in enumerate((a, b)):
                mine = only(side)
                if x == u:
                    subs[i] = (C2, (mine[0], u))
                elif x in mine:
                    partner = [v for v in mine if v != x]
                    subs[i] = (C3, (x, partner[0], u)) if partner else (C2, (x, u))
        else:
            ma, mb = only(a), only(b)
            if u in vs:
                subs[0] = (C2, (ma[0], u))
            elif len(ma) == 1:
                subs[0] = (C2, (ma[0], u))
            else:
                subs[1] = (C2, (mb[0], u))
        first = yield from ask_or_any(a, subs[0])
        second = yield from ask_or_any(b, subs[1])
        return self._glue(node, cond, first, second)

    # crossing, cutset {u, v} ----------------------------------------------

    def _orient(self, node: DecompNode, x: int) -> Tuple[DecompNode, DecompNode]:
        """(side holding x outside the cut, the other side)."""
        a, b = self._sides(node)
        cut = node.separation.cut
        if x in a.from_parent and x not in cut:
            return a, b
        return b, a

    def _equal_across(self, node: DecompNode, cond: Condition) -> Task:
        """C1 across {u, v}: four rounds of C3/C4 answers, the first consistent pair wins."""
        u, v = node.separation.cut
        x, y = cond.vertices
        p, q = self._orient(node, x)

        def joined(first: Side, second: Side) -> Tuple[int, ...]:
            return self._glue(node, cond, first, second)

        # round a: x (resp. y) avoids both cut vertices
        a_p = yield from self._get(p, C3, x, u, v)
        a_q = yield from self._get(q, C3, y, u, v)
        if (a_p[u] == a_p[v]) == (a_q[u] == a_q[v]):
            return joined(a_p, a_q)
        if a_p[u] == a_p[v]:
            p, q, x, y, a_p, a_q = q, p, y, x, a_q, a_p
        # now a_p splits u, v while a_q merges them, so uv is not an edge

        # round b: u avoids x and v
        b_p = yield from self._get(p, C3, u, x, v)
        b_q = yield from self._get(q, C3, u, y, v)
        if (b_p[v] == b_p[x]) == (b_q[v] == b_q[y]):
            return joined(b_p, b_q)
        if b_q[v] != b_q[y]:
            return joined(a_p, b_q)

        # round c: v avoids x and u
        c_p = yield from self._get(p, C3, v, x, u)
        c_q = yield from self._get(q, C3, v, y, u)
        if (c_p[u] == c_p[x]) == (c_q[u] == c_q[y]):
            return joined(c_p, c_q)
        if c_q[u] != c_q[y]:
            return joined(a_p, c_q)

        # round d: exactly two colours on x, u, v
        if node.graph.has_edge(u, v):
            raise InternalInvariant(f"node {node.node_id}: cut {u} {v} is an edge in the last round")
        d_p = yield from self._get(p, C4, x, u, v)
        if d_p[u] == d_p[x]:
            return joined(d_p, c_q)
        if d_p[v] == d_p[x]:
            return joined(d_p, b_q)
        return joined(d_p, a_q)

    def _split_or_merge(self, p: DecompNode, x: int, u: int, v: int):
        """C3 and C4 answers for x, u, v on side p, plus one with x apart from u == v if seen."""
        b_p = yield from self._get(p, C3, x, u, v)
        if b_p[u] == b_p[v]:
            return b_p, None, b_p
        c_p = yield from self._get(p, C4, x, u, v)
        if c_p[u] == c_p[v]:
            return b_p, c_p, c_p
        return b_p, c_p, None

    def _avoid_across(self, node: DecompNode, cond: Condition) -> Task:
        """C3 across {u, v}."""
        u, v = node.separation.cut
        x, y, z = cond.vertices
        g = node.graph
        if x in (u, v):
            other = v if x == u else u
            p, q = self._orient(node, y)
            first = yield from self._get(p, C3, x, other, y)
            second = yield from self._get(q, C3, x, other, z)
            return self._glue(node, cond, first, second)

        p, q = self._orient(node, x)
        inside = [w for w in (y, z) if w in p.from_parent and w not in (u, v)]
        if not inside:
            # y and z both on the far side
            if g.has_edge(u, v):
                first = yield from self._get(p, C3, x, u, v)
                second = yield from self._few_colours_on(q, u, v, y, z)
                return self._glue(node, cond, first, second)
            b_p, c_p, merged = yield from self._split_or_merge(p, x, u, v)
            if merged is not None:
                second = yield from self._get(q, C1, u, v)
                return self._glue(node, cond, merged, second)
            d_q = yield from self._get(q, C2, u, v)
            if len({d_q[u], d_q[v], d_q[y], d_q[z]}) <= 3:
                return self._glue(node, cond, b_p, d_q)
            return self._glue(node, cond, c_p, d_q)

        # one partner beside x, the other beyond the cut
        w = inside[0]
        t = z if w == y else y
        a_p = yield from self._get(p, C3, x, w, u)
        if a_p[v] != a_p[x]:
            second = yield from self._agree(node, q, a_p)
            return self._glue(node, cond, a_p, second)
        b_q = yield from self._get(q, C3, v, u, t)
        return self._glue(node, cond, a_p, b_q)

    def _few_colours_on(self, q: DecompNode, u: int, v: int, y: int, z: int):
        """Colouring of q using at most m - 1 colours on u, v, y, z."""
        group = []
        for w in (u, v, y, z):
            if w not in group:
                group.append(w)
        if self.m >= 5 or len(group) <= 3:
            return (yield from self._any(q))
        g = q.graph
        for s, t in itertools.combinations(group, 2):
            if not g.has_edge(q.from_parent[s], q.from_parent[t]):
                return (yield from self._get(q, C1, s, t))
        raise NotMFragile(f"K4 on {tuple(sorted(group))} meets a 2-cutset")

    def _two_colours_across(self, node: DecompNode, cond: Condition) -> Task:
        """C4 across {u, v}, arranged so x is alone on its side and y is not u."""
        u, v = node.separation.cut
        a, b = self._sides(node)
        vs = cond.vertices
        only_a = [w for w in vs if w in a.from_parent and w not in (u, v)]
        only_b = [w for w in vs if w in b.from_parent and w not in (u, v)]
        in_cut = [w for w in vs if w in (u, v)]
        if len(only_a) == 1:
            p, q, x = a, b, only_a[0]
        else:
            p, q, x = b, a, only_b[0]
        rest = [w for w in vs if w != x]
        if in_cut:
            y = in_cut[0]
            z = next(w for w in rest if w != y)
            if y == u:
                u, v = v, u
        else:
            y, z = rest
        g = node.graph

        if g.has_edge(u, v):
            first = yield from self._get(p, C3, x, u, v)
            second = yield from self._get(q, C3, u, y, z)
            return self._glue(node, cond, first, second)

        b_p, c_p, merged = yield from self._split_or_merge(p, x, u, v)
        if merged is not None:
            second = yield from self._get(q, C1, u, v)
            return self._glue(node, cond, merged, second)
        d_q = yield from self._get(q, C2, u, v)
        if d_q[y] == d_q[z] or len({d_q[u], d_q[v], d_q[y], d_q[z]}) >= 3:
            return self._glue(node, cond, b_p, d_q)
        return self._glue(node, cond, c_p, d_q)


def satisfy(g: Graph, cond: Condition, config: Optional[EngineConfig] = None,
            tree: Optional[DecompTree] = None) -> Colouring:
    return Engine(g, config, tree).satisfy(cond)


def colour(g: Graph, m: int = 4, config: Optional[EngineConfig] = None) -> Colouring:
    cfg = config or EngineConfig(m=m)
    with perf.span("engine.colour", extra={"n": g.n, "m": m}):
        return Engine(g, cfg).colour()


def is_m_fragile(g: Graph, m: int, budget: Optional[int] = None) -> bool:
    """Every 3-connected leaf of the decomposition is (m - 1)-colourable."""
    tree = decompose(g)
    for leaf in tree.leaves():
        if leaf.graph.n < 4:
            continue
        try:
            if exact_colour(leaf.graph, m - 1, budget=budget or LEAF_BUDGET, cap=None) is None:
                return False
        except BudgetExceeded as e:
            raise OracleBudget(str(e)) from e
    return True
