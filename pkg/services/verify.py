# services/verify.py
from __future__ import annotations
import contextvars
import itertools
import logging
import os
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from typing import Any, Callable, Dict, List, Optional, Tuple

import cache_ttl
import perf
from constructions import build_g_double_prime, double_subdivide, named, neq_gadget, replace_edges_with_gadget
from core import Graph, emit, induced_subgraph
from decomposition import find_independent_cutset, has_triangle, is_cutset, is_fragile
from engine import (
    ARITY, KINDS as CONDITION_KINDS, Condition, ConditionInvalid, Engine, EngineConfig,
    check_condition, validate_condition,
)
from extremal import check_edge_bound, degeneracy, girth, greedy_colour
from oracle import (
    Equal, NotEqual, all_k_colourings, chromatic_number, exact_colour, fragile_bruteforce,
    independence_number, three_connected_subgraph_with_chi,
)
from services import corpus

logger = logging.getLogger(__name__)

VERIFY_WORKERS = int(os.getenv("VERIFY_WORKERS", "4"))

DEFAULT_CORPUS: Dict[str, str] = {
    "poljak": "gnp:20:7:0.4+named:k3,k4,k5,c5,petersen",
    "gpp": "gnp:20:6:0.5+named:k3,k4,c5",
    "gadget": "named:gadget",
    "bounds": "fragile:30:10-40+sparse:20:10-30+chain:1-10+named:gadget,petersen-double",
    "theorem2": "named:k5+chi5:10:7-11",
    "indcut": "sparse:30:6-30+named:gadget,petersen-double,c4",
    "engine": "fragile:20:4-12+sparse:10:4-12+named:k4-e,c5,gadget",
    "fragile": "gnp:40:6:0.5+gnp:40:7:0.5+gnp:40:8:0.45",
}


@dataclass
class VerifyRow:
    suite: str
    item: str
    ok: bool
    detail: str
    cached: bool = False

    @property
    def status(self) -> str:
        return "PASS" if self.ok else "FAIL"

    def to_dict(self) -> Dict[str, Any]:
        out = asdict(self)
        out["status"] = self.status
        return out


Check = Callable[[Graph], Tuple[bool, str]]


def _poljak(g: Graph) -> Tuple[bool, str]:
    sub, _ = double_subdivide(g)
    want = independence_number(g) + g.edge_count
    got = independence_number(sub, cap=None)
    return got == want, f"alpha(G')={got} alpha(G)+|E|={want}"


def _three_colourable(g: Graph) -> bool:
    return exact_colour(g, 3, cap=None) is not None


def _gpp(g: Graph) -> Tuple[bool, str]:
    gpp, _ = build_g_double_prime(g)
    a, b = _three_colourable(g), _three_colourable(gpp)
    frag = is_fragile(gpp).fragile
    return a == b and frag, f"3col(G)={a} 3col(G'')={b} fragile={frag}"


def _gadget(_: Graph) -> Tuple[bool, str]:
    gi = neq_gadget()
    g = gi.graph
    tri = has_triangle(g)
    deg, _ = degeneracy(g)
    chi = chromatic_number(g)
    split = all(c[gi.terminal_a] != c[gi.terminal_b] for c in all_k_colourings(g, 3))
    k4 = replace_edges_with_gadget(named("k4"))
    c5 = replace_edges_with_gadget(named("c5"))
    k4_chi4 = exact_colour(k4, 3, cap=None) is None and exact_colour(k4, 4, cap=None) is not None
    k4_ok = k4_chi4 and not has_triangle(k4) and is_fragile(k4).fragile
    c5_ok = exact_colour(c5, 3, cap=None) is not None and exact_colour(c5, 2, cap=None) is None
    ok = not tri and deg <= 2 and chi == 3 and split and k4_ok and c5_ok
    return ok, (f"triangle_free={not tri} degeneracy={deg} chi={chi} terminals_split={split} "
                f"K4_swap_chi4={k4_ok} C5_swap_chi3={c5_ok}")


def _bounds(g: Graph) -> Tuple[bool, str]:
    frag = is_fragile(g).fragile
    rep = check_edge_bound(g, fragile=frag)
    used = greedy_colour(g).used()
    limit = 4 if rep.girth4_applies else 5
    ok = frag and not rep.contradiction(frag) and used <= limit
    return ok, (f"n={rep.n} e={rep.e} bound={rep.bound_general} girth={rep.girth} "
                f"greedy={used}/{limit} fragile={frag}")


def _theorem2(g: Graph) -> Tuple[bool, str]:
    chi = chromatic_number(g)
    found = three_connected_subgraph_with_chi(g, 4)
    ok = chi >= 5 and found is not None
    return ok, f"chi={chi} witness={' '.join(map(str, found)) if found else '-'}"


def _is_independent_cutset(g: Graph, cut: Tuple[int, ...]) -> bool:
    if any(g.has_edge(a, b) for a, b in itertools.combinations(cut, 2)):
        return False
    return is_cutset(g, cut)


def _indcut(g: Graph) -> Tuple[bool, str]:
    if g.n < 3 or girth(g) < 4:
        return True, "skipped: not girth >= 4 with 3+ vertices"
    trace: List[Tuple[int, ...]] = []
    cut = find_independent_cutset(g, trace)
    ok = _is_independent_cutset(g, cut)
    checked = 1
    for verts in trace[1:]:
        sub = induced_subgraph(g, verts).graph
        if sub.n < 3:
            continue
        inner = find_independent_cutset(sub)
        ok = ok and _is_independent_cutset(sub, inner)
        checked += 1
    return ok, f"cut={' '.join(map(str, cut))} graphs_checked={checked}"


def sample_conditions(g: Graph, per_kind: int, rng: random.Random) -> List[Condition]:
    """Up to per_kind valid conditions of each kind; all of them when few exist."""
    out: List[Condition] = []
    for kind in CONDITION_KINDS:
        pool = []
        for vs in itertools.permutations(range(g.n), ARITY[kind]):
            cond = Condition(kind, vs)
            try:
                validate_condition(g, cond)
            except ConditionInvalid:
                continue
            pool.append(cond)
        out += pool if len(pool) <= per_kind else rng.sample(pool, per_kind)
    return out


def _oracle_allows(g: Graph, cond: Condition, m: int) -> bool:
    vs = cond.vertices
    if cond.kind == "C1":
        cons = [Equal(*vs)]
    elif cond.kind == "C2":
        cons = [NotEqual(*vs)]
    elif cond.kind == "C3":
        cons = [NotEqual(vs[0], vs[1]), NotEqual(vs[0], vs[2])]
    else:
        # exactly two colours: some pair equal and the third apart
        return any(
            exact_colour(g, m, [Equal(a, b), NotEqual(a, c)], cap=None) is not None
            for a, b, c in ((vs[0], vs[1], vs[2]), (vs[0], vs[2], vs[1]), (vs[1], vs[2], vs[0]))
        )
    return exact_colour(g, m, cons, cap=None) is not None


def _engine(g: Graph, per_kind: int = 50, seed: int = 0) -> Tuple[bool, str]:
    rng = random.Random(seed)
    eng = Engine(g, EngineConfig(m=4, verify_each_step=True))
    conds = sample_conditions(g, per_kind, rng)
    bad = []
    for cond in conds:
        if not _oracle_allows(g, cond, 4):
            bad.append(f"{cond}:oracle")
            continue
        if not check_condition(g, cond, eng.satisfy(cond)):
            bad.append(str(cond))
    ok = not bad
    return ok, f"conditions={len(conds)} queries={eng.stats.queries} failures={','.join(bad[:3]) or '-'}"


def _fragile(g: Graph) -> Tuple[bool, str]:
    fast = is_fragile(g).fragile
    slow = fragile_bruteforce(g)
    return fast == slow, f"checker={fast} bruteforce={slow}"


SUITES: Dict[str, Check] = {
    "poljak": _poljak,
    "gpp": _gpp,
    "gadget": _gadget,
    "bounds": _bounds,
    "theorem2": _theorem2,
    "indcut": _indcut,
    "engine": _engine,
    "fragile": _fragile,
}


def _run_item(suite: str, corpus_spec: str, seed: int, item: Tuple[str, Graph], use_cache: bool) -> VerifyRow:
    name, g = item
    key = cache_ttl.verify_key(suite, corpus_spec, seed, emit(g, "graph6").strip())
    if use_cache:
        hit = cache_ttl.get(key)
        if hit is not None:
            return VerifyRow(suite, name, hit["ok"], hit["detail"], cached=True)
    with perf.span(f"verify.{suite}", extra={"item": name, "n": g.n}):
        try:
            ok, detail = SUITES[suite](g)
        except Exception as e:
            logger.exception("verify %s failed on %s", suite, name)
            return VerifyRow(suite, name, False, f"error: {type(e).__name__}: {e}")
    if use_cache:
        cache_ttl.setex(key, None, {"ok": ok, "detail": detail})
    logger.info("verify %s %s %s", suite, name, "PASS" if ok else "FAIL")
    return VerifyRow(suite, name, ok, detail)


def run_suite(suite: str, corpus_spec: Optional[str] = None, seed: int = 0,
              workers: Optional[int] = None, use_cache: bool = True) -> List[VerifyRow]:
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r} (known: {', '.join(SUITES)})")
    spec = corpus_spec or DEFAULT_CORPUS[suite]
    items = corpus.load(spec, seed)
    ctxs = [contextvars.copy_context() for _ in items]

    def one(pair):
        ctx, item = pair
        return ctx.run(_run_item, suite, spec, seed, item, use_cache)

    with ThreadPoolExecutor(max_workers=workers or VERIFY_WORKERS) as executor:
        return list(executor.map(one, zip(ctxs, items)))


def format_rows(rows: List[VerifyRow]) -> str:
    if not rows:
        return "no items\n"
    width = max(len(r.item) for r in rows)
    lines = [f"{r.status}  {r.item.ljust(width)}  {r.detail}" for r in rows]
    passed = sum(r.ok for r in rows)
    lines.append(f"{passed}/{len(rows)} passed")
    return "\n".join(lines) + "\n"
