# oracle.py
from __future__ import annotations
import itertools
import logging
import os
from dataclasses import dataclass
from typing import Dict, Generator, Iterator, List, Optional, Sequence, Tuple, Union

import perf
from core import Colouring, Graph, induced_subgraph

logger = logging.getLogger(__name__)

NODE_BUDGET = int(os.getenv("ORACLE_NODE_BUDGET", "2000000"))
CHI_CAP = int(os.getenv("ORACLE_CHI_CAP", "20"))
ALPHA_CAP = int(os.getenv("ORACLE_ALPHA_CAP", "40"))
FRAGILE_CAP = int(os.getenv("ORACLE_FRAGILE_CAP", "16"))
ENUM_CAP = int(os.getenv("ORACLE_ENUM_CAP", "18"))
SPLIT_LIMIT = int(os.getenv("ORACLE_SPLIT_LIMIT", "400"))
COMPONENT_CACHE = int(os.getenv("ORACLE_COMPONENT_CACHE", "100000"))


class BudgetExceeded(RuntimeError):
    def __init__(self, message: str, nodes: int = 0):
        super().__init__(message)
        self.nodes = nodes


@dataclass
class SearchStats:
    nodes: int = 0
    calls: int = 0


@dataclass(frozen=True)
class Equal:
    u: int
    v: int


@dataclass(frozen=True)
class NotEqual:
    u: int
    v: int


@dataclass(frozen=True)
class Fixed:
    v: int
    colour: int


Constraint = Union[Equal, NotEqual, Fixed]


def _check_cap(g: Graph, cap: Optional[int], what: str) -> None:
    if cap is not None and g.n > cap:
        raise BudgetExceeded(f"{what}: {g.n} vertices exceeds cap {cap}")


class _Counter:
    def __init__(self, budget: Optional[int], what: str):
        self.budget = NODE_BUDGET if budget is None else budget
        self.what = what
        self.nodes = 0

    def tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceeded(f"{self.what}: node budget {self.budget} exhausted", self.nodes)


def _finish(counter: _Counter, stats: Optional[SearchStats]) -> None:
    perf.mark("oracle.nodes", counter.nodes)
    if stats is not None:
        stats.nodes += counter.nodes
        stats.calls += 1


def exact_colour(
    g: Graph,
    k: int,
    constraints: Sequence[Constraint] = (),
    budget: Optional[int] = None,
    cap: Optional[int] = CHI_CAP,
    stats: Optional[SearchStats] = None,
) -> Optional[Colouring]:
    """Proper k-colouring meeting every constraint, or None when none exists.

    Equal pairs are merged first; NotEqual pairs become extra edges of the
    quotient. The search is DSATUR-ordered backtracking with forward checking,
    run on an explicit stack. Once a choice disconnects the uncoloured
    vertices, each component is solved on its own and its outcome is cached
    against the colours on its rim. Without pinned vertices only one unused
    colour is tried at each step.
    """
    _check_cap(g, cap, "exact_colour")
    if g.n == 0:
        return Colouring(max(k, 0), ())
    if k <= 0:
        return None

    parent = list(range(g.n))

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for c in constraints:
        if isinstance(c, Equal):
            a, b = find(c.u), find(c.v)
            if a != b:
                parent[max(a, b)] = min(a, b)
    reps = sorted({find(v) for v in range(g.n)})
    idx = {r: i for i, r in enumerate(reps)}
    q = len(reps)
    nbr: List[set] = [set() for _ in range(q)]
    for u, v in g.edges():
        a, b = idx[find(u)], idx[find(v)]
        if a == b:
            return None
        nbr[a].add(b)
        nbr[b].add(a)
    pinned: Dict[int, int] = {}
    for c in constraints:
        if isinstance(c, NotEqual):
            a, b = idx[find(c.u)], idx[find(c.v)]
            if a == b:
                return None
            nbr[a].add(b)
            nbr[b].add(a)
        elif isinstance(c, Fixed):
            a = idx[find(c.v)]
            if not 1 <= c.colour <= k or pinned.get(a, c.colour) != c.colour:
                return None
            pinned[a] = c.colour

    counter = _Counter(budget, "exact_colour")
    adj = [sorted(s) for s in nbr]
    deg = [len(s) for s in adj]
    full = (1 << (k + 1)) - 2
    colour = [0] * q
    usage = [0] * (k + 1)
    symmetric = not pinned
    cache: Dict[Tuple[Tuple[int, ...], Tuple[Tuple[int, int], ...]], Optional[Tuple[int, ...]]] = {}

    def paint(a: int, col: int) -> None:
        colour[a] = col
        usage[col] += 1

    def wipe(verts: Sequence[int]) -> None:
        for a in verts:
            if colour[a]:
                usage[colour[a]] -= 1
                colour[a] = 0

    def free(a: int) -> int:
        taken = 0
        for b in adj[a]:
            taken |= 1 << colour[b]
        return full & ~taken

    def split(verts: List[int]) -> List[List[int]]:
        """Components of the uncoloured vertices, smallest first."""
        if len(verts) > SPLIT_LIMIT:
            return [verts]
        todo = set(verts)
        parts = []
        for start in verts:
            if start not in todo:
                continue
            todo.discard(start)
            part, frontier = [start], [start]
            while frontier:
                for b in adj[frontier.pop()]:
                    if b in todo:
                        todo.discard(b)
                        part.append(b)
                        frontier.append(b)
            parts.append(part)
        parts.sort(key=len)
        return parts

    def branch(comp: List[int]) -> Generator[List[int], bool, bool]:
        a = min(comp, key=lambda b: (free(b).bit_count(), -deg[b], b))
        options = free(a)
        rest = [b for b in comp if b != a]
        opened = False
        for col in range(1, k + 1):
            if not options >> col & 1:
                continue
            if symmetric and not usage[col]:
                # unused colours are interchangeable
                if opened:
                    continue
                opened = True
            paint(a, col)
            if all(free(b) for b in adj[a] if not colour[b]):
                ok = True
                for part in split(rest):
                    if not (yield part):
                        ok = False
                        break
                if ok:
                    return True
                wipe(rest)
            wipe((a,))
        return False

    def solve(comp: List[int]) -> Generator[List[int], bool, bool]:
        counter.tick()
        key = None
        if len(comp) <= SPLIT_LIMIT:
            rim = sorted({b for a in comp for b in adj[a] if colour[b]})
            key = tuple(sorted(comp)), tuple((b, colour[b]) for b in rim)
            if key in cache:
                known = cache[key]
                if known is None:
                    return False
                for a, col in zip(key[0], known):
                    paint(a, col)
                return True
        ok = yield from branch(comp)
        if key is not None:
            if len(cache) >= COMPONENT_CACHE:
                cache.clear()
            cache[key] = tuple(colour[a] for a in key[0]) if ok else None
        return ok

    def run() -> bool:
        for a, col in pinned.items():
            if any(colour[b] == col for b in nbr[a]):
                return False
            paint(a, col)
        loose = [a for a in range(q) if not colour[a]]
        if not all(free(a) for a in loose):
            return False
        for part in split(loose):
            stack = [solve(part)]
            value: Optional[bool] = None
            while stack:
                try:
                    sub = stack[-1].send(value)
                except StopIteration as stop:
                    stack.pop()
                    value = stop.value
                    continue
                stack.append(solve(sub))
                value = None
            if not value:
                return False
        return True

    try:
        ok = run()
    finally:
        _finish(counter, stats)
    if not ok:
        return None
    return Colouring(k, tuple(colour[idx[find(v)]] for v in range(g.n)))


def chromatic_number(g: Graph, budget: Optional[int] = None, cap: Optional[int] = CHI_CAP,
                     stats: Optional[SearchStats] = None) -> int:
    _check_cap(g, cap, "chromatic_number")
    if g.n == 0:
        return 0
    k = 1 if g.edge_count == 0 else 2
    with perf.span("oracle.chi", extra={"n": g.n}):
        while exact_colour(g, k, budget=budget, cap=cap, stats=stats) is None:
            k += 1
    return k


def colour_optimally(g: Graph, budget: Optional[int] = None, cap: Optional[int] = CHI_CAP) -> Colouring:
    k = chromatic_number(g, budget=budget, cap=cap)
    found = exact_colour(g, k, budget=budget, cap=cap)
    assert found is not None
    return found


def independence_number(g: Graph, budget: Optional[int] = None, cap: Optional[int] = ALPHA_CAP,
                        stats: Optional[SearchStats] = None) -> int:
    """Branch and bound on bitmasks.

    Vertices of degree 0 or 1 are always taken. When every remaining vertex
    has degree 2 the rest is a union of cycles and is counted directly;
    otherwise the search branches on a vertex of largest degree.
    """
    _check_cap(g, cap, "independence_number")
    nbr = [sum(1 << w for w in g.adj[v]) for v in range(g.n)]
    counter = _Counter(budget, "independence_number")
    best = 0
    stack = [((1 << g.n) - 1, 0)]
    try:
        while stack:
            cands, size = stack.pop()
            counter.tick()
            cands, size = _take_low_degree(cands, size, nbr)
            if size + cands.bit_count() <= best:
                continue
            pick, pick_deg = _max_degree(cands, nbr)
            if pick_deg <= 2:
                best = max(best, size + sum(c.bit_count() // 2 for c in _components(cands, nbr)))
                continue
            bit = 1 << pick
            stack.append((cands & ~bit, size))
            stack.append((cands & ~bit & ~nbr[pick], size + 1))
    finally:
        _finish(counter, stats)
    return best


def _take_low_degree(cands: int, size: int, nbr: Sequence[int]) -> Tuple[int, int]:
    changed = True
    while changed:
        changed = False
        rest = cands
        while rest:
            low = rest & -rest
            rest ^= low
            if not cands & low:
                continue
            near = nbr[low.bit_length() - 1] & cands
            if near.bit_count() <= 1:
                cands &= ~low & ~near
                size += 1
                changed = True
    return cands, size


def _max_degree(cands: int, nbr: Sequence[int]) -> Tuple[int, int]:
    pick, pick_deg = -1, -1
    rest = cands
    while rest:
        low = rest & -rest
        rest ^= low
        u = low.bit_length() - 1
        d = (nbr[u] & cands).bit_count()
        if d > pick_deg:
            pick, pick_deg = u, d
    return pick, pick_deg


def _components(mask: int, nbr: Sequence[int]) -> List[int]:
    parts = []
    while mask:
        start = mask & -mask
        seen = frontier = start
        while frontier:
            low = frontier & -frontier
            frontier ^= low
            fresh = nbr[low.bit_length() - 1] & mask & ~seen
            seen |= fresh
            frontier |= fresh
        mask &= ~seen
        parts.append(seen)
    return parts


# --- brute-force connectivity on bitmasks -----------------------------------

def _connected(mask: int, nbr: Sequence[int]) -> bool:
    if mask == 0:
        return True
    start = mask & -mask
    seen = frontier = start
    while frontier:
        low = frontier & -frontier
        frontier ^= low
        fresh = nbr[low.bit_length() - 1] & mask & ~seen
        seen |= fresh
        frontier |= fresh
    return seen == mask


def _three_connected_mask(mask: int, nbr: Sequence[int]) -> bool:
    members = [v for v in range(len(nbr)) if mask >> v & 1]
    if len(members) < 4:
        return False
    if any((nbr[v] & mask).bit_count() < 3 for v in members):
        return False
    if not _connected(mask, nbr):
        return False
    for i, u in enumerate(members):
        without_u = mask & ~(1 << u)
        if not _connected(without_u, nbr):
            return False
        for w in members[i + 1:]:
            if not _connected(without_u & ~(1 << w), nbr):
                return False
    return True


def _subsets_by_size(n: int, sizes: Sequence[int]) -> Iterator[int]:
    for size in sizes:
        for combo in itertools.combinations(range(n), size):
            yield sum(1 << v for v in combo)


def fragile_bruteforce(g: Graph, cap: Optional[int] = FRAGILE_CAP, budget: Optional[int] = None) -> bool:
    """True iff no vertex subset of size >= 4 induces a 3-connected graph."""
    _check_cap(g, cap, "fragile_bruteforce")
    nbr = [sum(1 << w for w in g.adj[v]) for v in range(g.n)]
    counter = _Counter(budget, "fragile_bruteforce")
    try:
        for mask in _subsets_by_size(g.n, range(4, g.n + 1)):
            counter.tick()
            if _three_connected_mask(mask, nbr):
                return False
        return True
    finally:
        _finish(counter, None)


def three_connected_subgraph_with_chi(g: Graph, k: int, cap: Optional[int] = FRAGILE_CAP,
                                      budget: Optional[int] = None) -> Optional[Tuple[int, ...]]:
    """Largest-first search for a 3-connected induced subgraph with chromatic number >= k."""
    _check_cap(g, cap, "three_connected_subgraph_with_chi")
    nbr = [sum(1 << w for w in g.adj[v]) for v in range(g.n)]
    counter = _Counter(budget, "three_connected_subgraph_with_chi")
    try:
        for mask in _subsets_by_size(g.n, range(g.n, 3, -1)):
            counter.tick()
            if not _three_connected_mask(mask, nbr):
                continue
            verts = tuple(v for v in range(g.n) if mask >> v & 1)
            sub = induced_subgraph(g, verts).graph
            if exact_colour(sub, k - 1, budget=budget, cap=None) is None:
                return verts
        return None
    finally:
        _finish(counter, None)


def all_k_colourings(g: Graph, k: int, symmetry_breaking: bool = False,
                     budget: Optional[int] = None, cap: Optional[int] = ENUM_CAP) -> Iterator[Colouring]:
    """Every proper k-colouring once, in lexicographic order of the colour vector.

    With `symmetry_breaking` only colourings whose colours first appear in
    increasing order are produced (one per partition into colour classes).
    """
    _check_cap(g, cap, "all_k_colourings")
    n = g.n
    if n == 0:
        yield Colouring(max(k, 0), ())
        return
    if k <= 0:
        return
    counter = _Counter(budget, "all_k_colourings")
    back = [tuple(w for w in g.adj[v] if w < v) for v in range(n)]
    assign = [0] * n
    top = [0] * (n + 1)  # top[v]: largest colour among vertices < v
    v = 0
    try:
        while v >= 0:
            limit = min(k, top[v] + 1) if symmetry_breaking else k
            c = assign[v] + 1
            while c <= limit and any(assign[w] == c for w in back[v]):
                c += 1
            if c > limit:
                assign[v] = 0
                v -= 1
                continue
            assign[v] = c
            counter.tick()
            if v == n - 1:
                yield Colouring(k, tuple(assign))
            else:
                top[v + 1] = max(top[v], c)
                v += 1
    finally:
        _finish(counter, None)
