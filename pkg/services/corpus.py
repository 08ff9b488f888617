# services/corpus.py
"""Corpus specs -> seeded lists of (name, graph).

Spec grammar, items joined with '+':

    gnp:COUNT:N:P            random graphs G(N, P)
    fragile:COUNT:LO-HI      random_fragile with N drawn from LO..HI
    sparse:COUNT:LO-HI       same with the sparse piece profile
    chain:LO-HI              tight_chain(k) for k in LO..HI
    named:a,b,c              named graphs
    chi5:COUNT:LO-HI         random dense graphs with chromatic number 5
"""
from __future__ import annotations
import logging
import random
from typing import Callable, Dict, List, Tuple

from constructions import named, random_fragile, tight_chain
from core import Graph, build_graph
from oracle import chromatic_number

logger = logging.getLogger(__name__)

Item = Tuple[str, Graph]


class CorpusError(ValueError):
    pass


def random_graph(n: int, p: float, rng: random.Random) -> Graph:
    return build_graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def _span(text: str) -> Tuple[int, int]:
    lo, _, hi = text.partition("-")
    return int(lo), int(hi or lo)


def _gnp(args: List[str], rng: random.Random) -> List[Item]:
    count, n, p = int(args[0]), int(args[1]), float(args[2])
    return [(f"gnp-{n}-{i}", random_graph(n, p, rng)) for i in range(count)]


def _fragile(profile: str) -> Callable[[List[str], random.Random], List[Item]]:
    def make(args: List[str], rng: random.Random) -> List[Item]:
        count = int(args[0])
        lo, hi = _span(args[1])
        out = []
        for i in range(count):
            n = rng.randint(lo, hi)
            s = rng.randrange(1 << 30)
            out.append((f"{profile}-{n}-s{s}", random_fragile(n, s, profile)))
        return out
    return make


def _chain(args: List[str], rng: random.Random) -> List[Item]:
    lo, hi = _span(args[0])
    return [(f"chain-{k}", tight_chain(k)) for k in range(lo, hi + 1)]


def _named(args: List[str], rng: random.Random) -> List[Item]:
    return [(name, named(name)) for name in args[0].split(",") if name]


def _chi5(args: List[str], rng: random.Random, tries: int = 400) -> List[Item]:
    count = int(args[0])
    lo, hi = _span(args[1])
    out: List[Item] = []
    for _ in range(tries):
        if len(out) >= count:
            break
        n = rng.randint(lo, hi)
        g = random_graph(n, 0.75, rng)
        if chromatic_number(g) == 5:
            out.append((f"chi5-{n}-{len(out)}", g))
    if len(out) < count:
        logger.warning("only %d of %d chi-5 graphs found", len(out), count)
    return out


KINDS: Dict[str, Callable[[List[str], random.Random], List[Item]]] = {
    "gnp": _gnp,
    "fragile": _fragile("mixed"),
    "sparse": _fragile("sparse"),
    "dense": _fragile("dense"),
    "chain": _chain,
    "named": _named,
    "chi5": _chi5,
}


def load(spec: str, seed: int = 0) -> List[Item]:
    rng = random.Random(seed)
    items: List[Item] = []
    for part in spec.split("+"):
        kind, *args = part.strip().split(":")
        if kind not in KINDS:
            raise CorpusError(f"unknown corpus kind {kind!r} in {spec!r}")
        try:
            items += KINDS[kind](args, rng)
        except (IndexError, ValueError) as e:
            raise CorpusError(f"bad corpus item {part!r}: {e}") from e
    return items
