import networkx as nx
import pytest

from constructions import double_subdivide, named, not_three_colourable_fragile
from core import build_graph, is_proper
from oracle import (
    BudgetExceeded, Equal, Fixed, NotEqual, SearchStats, all_k_colourings, chromatic_number,
    colour_optimally, exact_colour, fragile_bruteforce, independence_number,
    three_connected_subgraph_with_chi,
)


@pytest.mark.parametrize("name, chi", [("k3", 3), ("k4", 4), ("k5", 5), ("c4", 2), ("c5", 3),
                                       ("petersen", 3), ("wheel5", 4), ("gadget", 3)])
def test_chromatic_number(name, chi):
    assert chromatic_number(named(name)) == chi


def test_chromatic_number_trivial_graphs():
    assert chromatic_number(build_graph(0, [])) == 0
    assert chromatic_number(build_graph(3, [])) == 1


def test_colour_optimally_is_proper(petersen):
    c = colour_optimally(petersen)
    assert c.m == 3 and is_proper(petersen, c)


def test_constraints(c5):
    c = exact_colour(c5, 3, [Equal(0, 2)])
    assert c is not None and c[0] == c[2] and is_proper(c5, c)
    assert exact_colour(c5, 3, [Equal(0, 1)]) is None
    c = exact_colour(named("c4"), 2, [Fixed(0, 2)])
    assert c[0] == 2 and c[2] == 2
    assert exact_colour(build_graph(2, []), 1, [NotEqual(0, 1)]) is None
    assert exact_colour(named("c4"), 2, [Fixed(0, 1), Fixed(1, 1)]) is None
    assert exact_colour(named("k3"), 2) is None


def test_budget_and_cap(petersen):
    with pytest.raises(BudgetExceeded) as info:
        exact_colour(petersen, 3, budget=1)
    assert info.value.nodes == 2
    with pytest.raises(BudgetExceeded):
        exact_colour(build_graph(25, []), 1)
    assert exact_colour(build_graph(25, []), 1, cap=None) is not None


def test_search_stats_accumulate(petersen):
    stats = SearchStats()
    chromatic_number(petersen, stats=stats)
    assert stats.calls == 2 and stats.nodes > 0


@pytest.mark.parametrize("name, alpha", [("k4", 1), ("c5", 2), ("petersen", 4), ("k3", 1)])
def test_independence_number(name, alpha):
    assert independence_number(named(name)) == alpha


def test_independence_number_matches_networkx():
    g = double_subdivide(named("k4"))[0]
    comp = nx.complement(g.to_networkx())
    assert independence_number(g) == max(len(c) for c in nx.find_cliques(comp))


def test_fragile_bruteforce(k4, c5, diamond):
    assert not fragile_bruteforce(k4)
    assert fragile_bruteforce(c5)
    assert fragile_bruteforce(diamond)
    assert not fragile_bruteforce(named("wheel5"))


def test_three_connected_subgraph_with_chi(c5):
    assert three_connected_subgraph_with_chi(named("k5"), 4) == (0, 1, 2, 3, 4)
    assert three_connected_subgraph_with_chi(c5, 3) is None
    assert three_connected_subgraph_with_chi(named("wheel5"), 4) == (0, 1, 2, 3, 4, 5)


def test_all_k_colourings_order_and_symmetry(path3):
    assert [c.colours for c in all_k_colourings(path3, 2)] == [(1, 2, 1), (2, 1, 2)]
    k3 = named("k3")
    assert len(list(all_k_colourings(k3, 3))) == 6
    assert [c.colours for c in all_k_colourings(k3, 3, symmetry_breaking=True)] == [(1, 2, 3)]
    assert list(all_k_colourings(k3, 2)) == []
    assert len(list(all_k_colourings(build_graph(0, []), 3))) == 1


def _prism(n):
    rim = [(i, (i + 1) % n) for i in range(n)]
    return build_graph(2 * n, rim + [(a + n, b + n) for a, b in rim] + [(i, i + n) for i in range(n)])


def test_exact_colour_runs_on_an_explicit_stack():
    g = _prism(700)
    c = exact_colour(g, 3, cap=None)
    assert c is not None and is_proper(g, c)


def test_exact_colour_refutes_the_swapped_k4():
    g = not_three_colourable_fragile()
    assert exact_colour(g, 3, cap=None) is None
    assert exact_colour(g, 4, cap=None) is not None


def test_exact_colour_solves_components_apart():
    # two triangles joined through a single vertex, plus a lone edge
    g = build_graph(7, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4), (5, 6)])
    c = exact_colour(g, 3, [Fixed(5, 3)])
    assert c is not None and is_proper(g, c) and c[5] == 3
    assert exact_colour(g, 2) is None
    assert exact_colour(g, 3, [Equal(0, 3), NotEqual(2, 5)]) is not None


@pytest.mark.parametrize("dropped", [0, 4])
def test_independence_number_of_dense_double_subdivisions(dropped):
    pairs = [(u, v) for u in range(8) for v in range(u + 1, 8)]
    matching = [(0, 1), (2, 3), (4, 5), (6, 7)][:dropped]
    g = build_graph(8, [p for p in pairs if p not in matching])
    sub, _ = double_subdivide(g)
    assert sub.n == 8 + 2 * g.edge_count
    assert independence_number(sub, cap=None) == independence_number(g) + g.edge_count


def test_independence_number_on_long_paths_and_cycles():
    path = build_graph(1200, [(i, i + 1) for i in range(1199)])
    assert independence_number(path, cap=None) == 600
    cycle = build_graph(9, [(i, (i + 1) % 9) for i in range(9)])
    assert independence_number(cycle) == 4
