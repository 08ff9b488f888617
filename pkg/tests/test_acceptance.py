"""End-to-end sweeps; sized down unless FRAGILE_FULL=1."""
import itertools
import os
import random
import time
from fractions import Fraction

import pytest

from constructions import (
    build_g_double_prime, cubic_girth_pair, double_subdivide, named, random_fragile,
    replace_edges_with_gadget, tight_chain,
)
from core import build_graph, is_proper
from decomposition import decompose, has_triangle, is_fragile
from engine import Engine, EngineConfig, colour
from extremal import check_edge_bound, girth, greedy_colour
from oracle import exact_colour, fragile_bruteforce, independence_number
from services import corpus, verify

FULL = os.getenv("FRAGILE_FULL", "0") == "1"

pytestmark = pytest.mark.slow


def _size(small, full):
    return full if FULL else small


def _fragile_corpus():
    rng = random.Random(11)
    return [random_fragile(rng.randint(10, 60), seed, rng.choice(("mixed", "sparse", "dense")))
            for seed in range(1, _size(60, 300) + 1)]


def test_four_colours_every_random_fragile_graph():
    for seed in range(1, _size(50, 500) + 1):
        g = random_fragile(10 + seed % 51, seed)
        t0 = time.perf_counter()
        c = colour(g, m=4)
        elapsed = time.perf_counter() - t0
        assert c.m == 4 and is_proper(g, c), seed
        if FULL:
            assert elapsed < 0.1, (seed, elapsed)


def test_engine_never_fails_on_valid_conditions():
    rows = verify.run_suite("engine", f"fragile:{_size(10, 50)}:4-12+sparse:{_size(5, 50)}:4-12",
                            seed=3, use_cache=False)
    assert all(r.ok for r in rows), verify.format_rows(rows)


def test_fragility_checker_agrees_with_bruteforce_exhaustively():
    for n in range(_size(6, 7)):
        pairs = list(itertools.combinations(range(n), 2))
        for mask in range(1 << len(pairs)):
            g = build_graph(n, [p for i, p in enumerate(pairs) if mask >> i & 1])
            assert is_fragile(g).fragile == fragile_bruteforce(g), (n, mask)


@pytest.mark.parametrize("n", [7, 8])
def test_fragility_checker_agrees_on_random_graphs(n):
    rng = random.Random(n)
    for _ in range(_size(40, 200)):
        g = corpus.random_graph(n, rng.uniform(0.2, 0.8), rng)
        assert is_fragile(g).fragile == fragile_bruteforce(g)


def test_edge_bounds_and_greedy_colours_on_corpus():
    for g in _fragile_corpus():
        rep = check_edge_bound(g, fragile=True)
        assert rep.e <= Fraction(5, 2) * g.n - 5
        used = greedy_colour(g).used()
        assert used <= 5
        if rep.girth4_applies:
            assert rep.e <= 2 * g.n - 4
            assert used <= 4
    for k in range(1, 51):
        assert check_edge_bound(tight_chain(k)).tight_general


def test_chi_four_witness():
    g = replace_edges_with_gadget(named("k4"))
    assert not has_triangle(g)
    assert is_fragile(g).fragile
    assert exact_colour(g, 3, cap=None) is None
    assert exact_colour(g, 4, cap=None) is not None
    c5 = replace_edges_with_gadget(named("c5"))
    assert exact_colour(c5, 2, cap=None) is None
    assert exact_colour(c5, 3, cap=None) is not None


def test_independence_grows_by_edge_count_on_corpus():
    rng = random.Random(8)
    graphs = [corpus.random_graph(rng.randint(1, 8), rng.uniform(0.2, 0.8), rng) for _ in range(_size(30, 100))]
    graphs += [named(n) for n in ("k3", "k4", "k5", "c5", "petersen")]
    for g in graphs:
        sub, _ = double_subdivide(g)
        assert independence_number(sub, cap=None) == independence_number(g) + g.edge_count


def test_g_double_prime_preserves_three_colourability():
    rng = random.Random(9)
    for _ in range(_size(30, 100)):
        g = corpus.random_graph(rng.randint(1, 6), rng.uniform(0.3, 0.9), rng)
        gpp, _ = build_g_double_prime(g)
        assert (exact_colour(g, 3) is None) == (exact_colour(gpp, 3, cap=None) is None)
        assert is_fragile(gpp).fragile


def test_cubic_pair_of_petersen_for_every_edge():
    p = named("petersen")
    for e in p.edges():
        g = cubic_girth_pair(p, e)
        assert all(g.degree(v) == 3 for v in g.vertices())
        assert girth(g) == 5
        assert is_fragile(g).fragile


def test_independent_cutsets_on_corpus():
    rows = verify.run_suite("indcut", seed=1, use_cache=False)
    assert all(r.ok for r in rows), verify.format_rows(rows)


def test_tight_chain_500_memo_on_and_off():
    g = tight_chain(500)
    t0 = time.perf_counter()
    tree = decompose(g)
    with_memo = Engine(g, EngineConfig(memo_enabled=True), tree=tree).colour()
    elapsed = time.perf_counter() - t0
    without = Engine(g, EngineConfig(memo_enabled=False), tree=tree).colour()
    assert is_proper(g, with_memo) and is_proper(g, without)
    if FULL:
        assert elapsed < 5.0


def test_dense_graphs_hold_a_three_connected_four_chromatic_subgraph():
    rows = verify.run_suite("theorem2", seed=2, use_cache=False)
    assert rows and all(r.ok for r in rows), verify.format_rows(rows)
