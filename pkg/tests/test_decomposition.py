import itertools

import networkx as nx
import pytest

from constructions import named, neq_gadget, tight_chain
from core import build_graph
from decomposition import (
    PreconditionViolated, TooSmall, articulation_points, components, decompose,
    find_independent_cutset, find_small_cutset, has_triangle, is_cutset, is_fragile,
    is_three_connected,
)


def test_components_order_by_smallest_vertex():
    g = build_graph(6, [(4, 5), (1, 3), (0, 2)])
    assert components(g) == [[0, 2], [1, 3], [4, 5]]
    assert components(g, removed=[2, 3]) == [[0], [1], [4, 5]]


def test_articulation_points_match_networkx(petersen):
    g = build_graph(7, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3), (5, 6)])
    assert articulation_points(g) == set(nx.articulation_points(g.to_networkx()))
    assert articulation_points(petersen) == set()
    assert articulation_points(g, removed=2) == {5}


def test_cutset_sizes(path3, c5, k4):
    sep = find_small_cutset(build_graph(4, [(0, 1), (2, 3)]))
    assert sep.cut == () and sep.side1 == {0, 1} and sep.side2 == {2, 3}

    sep = find_small_cutset(path3)
    assert sep.cut == (1,)
    assert sep.side1 == {0, 1} and sep.side2 == {1, 2}

    sep = find_small_cutset(c5)
    assert sep.cut == (0, 2)
    assert sep.side1 == {0, 1, 2} and sep.side2 == {0, 2, 3, 4}
    sep.validate(c5)

    assert find_small_cutset(k4) is None


def test_cutset_needs_two_vertices():
    with pytest.raises(TooSmall):
        find_small_cutset(build_graph(1, []))


def test_three_connectivity(k4, diamond, petersen):
    assert is_three_connected(k4)
    assert is_three_connected(petersen)
    assert not is_three_connected(diamond)
    assert not is_three_connected(named("k3"))


def test_decompose_c5_serialization(c5):
    tree = decompose(c5)
    assert tree.serialize() == (
        "node 1 leaf 0 1 2\n"
        "node 3 leaf 0 3 4\n"
        "node 4 leaf 2 3\n"
        "node 2 cut 3 children 3 4\n"
        "node 0 cut 0 2 children 1 2\n"
    )
    assert tree.depth() == 2
    assert all(leaf.graph.n <= 3 for leaf in tree.leaves())


def test_decompose_small_graph_is_single_leaf(path3):
    tree = decompose(path3)
    assert len(tree.nodes) == 1
    assert tree.serialize() == "node 0 leaf 0 1 2\n"


def test_decompose_children_are_induced():
    g = tight_chain(4)
    tree = decompose(g)
    for nd in tree.nodes:
        for v, w in nd.graph.edges():
            assert g.has_edge(nd.to_root[v], nd.to_root[w])
        if not nd.is_leaf:
            nd.separation.validate(nd.graph)


def test_is_fragile(k4, diamond, petersen):
    rep = is_fragile(k4)
    assert not rep.fragile and rep.witness == (0, 1, 2, 3)
    assert is_fragile(diamond).fragile
    assert is_fragile(tight_chain(20)).fragile
    assert not is_fragile(petersen).fragile
    assert is_fragile(build_graph(0, [])).fragile


def test_has_triangle(k4, c5):
    assert has_triangle(k4)
    assert not has_triangle(c5)


def test_independent_cutset_on_c4():
    assert find_independent_cutset(named("c4")) == (0, 2)


def _is_independent_cutset(g, cut):
    return is_cutset(g, cut) and not any(g.has_edge(a, b) for a, b in itertools.combinations(cut, 2))


def test_independent_cutset_on_gadget_and_trace():
    g = neq_gadget().graph
    trace = []
    cut = find_independent_cutset(g, trace)
    assert len(cut) <= 2
    assert _is_independent_cutset(g, cut)
    assert trace[0] == tuple(range(g.n))


def test_independent_cutset_through_edge_cut():
    # two 4-cycles sharing the edge 0-1; the first 2-cut found is that edge
    g = build_graph(6, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 5), (5, 1)])
    cut = find_independent_cutset(g)
    assert _is_independent_cutset(g, cut)


def test_independent_cutset_preconditions(k4):
    with pytest.raises(PreconditionViolated):
        find_independent_cutset(build_graph(2, [(0, 1)]))
    with pytest.raises(PreconditionViolated):
        find_independent_cutset(k4)
    k33 = build_graph(6, [(a, b) for a in range(3) for b in range(3, 6)])
    with pytest.raises(PreconditionViolated):
        find_independent_cutset(k33)
