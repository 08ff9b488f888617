import logging
import math

import networkx as nx
import pytest

from constructions import double_subdivide, named, tight_chain
from core import build_graph, is_proper
from extremal import check_edge_bound, degeneracy, girth, greedy_colour


@pytest.mark.parametrize("name", ["k3", "k4", "c4", "c5", "petersen", "petersen-double", "gadget", "wheel5"])
def test_girth_matches_networkx(name):
    g = named(name)
    assert girth(g) == nx.girth(g.to_networkx())


def test_girth_of_forest_is_infinite(path3):
    assert girth(path3) == math.inf
    assert girth(build_graph(0, [])) == math.inf


def test_degeneracy(path3, petersen, k4):
    assert degeneracy(path3) == (1, [0, 1, 2])
    assert degeneracy(petersen)[0] == 3
    assert degeneracy(k4)[0] == 3
    assert degeneracy(named("gadget"))[0] == 2
    worst, order = degeneracy(tight_chain(5))
    assert worst == 3 and sorted(order) == list(range(12))


def test_greedy_colour_within_degeneracy(petersen):
    for g in (petersen, tight_chain(6), double_subdivide(named("k5"))[0]):
        c = greedy_colour(g)
        assert is_proper(g, c)
        assert c.m <= degeneracy(g)[0] + 1


def test_bound_report_tight_cases(diamond):
    rep = check_edge_bound(diamond)
    assert rep.tight_general and not rep.exceeds_general
    assert not rep.girth4_applies

    rep = check_edge_bound(named("c4"))
    assert rep.tight_girth4 and not rep.tight_general

    rep = check_edge_bound(tight_chain(12))
    assert rep.e == rep.bound_general


def test_bound_report_exceeds(k4, caplog):
    with caplog.at_level(logging.ERROR, logger="extremal"):
        rep = check_edge_bound(k4, fragile=True)
    assert rep.exceeds_general
    assert rep.contradiction(True) and not rep.contradiction(False)
    assert "exceeds an edge bound" in caplog.text


def test_small_graphs_are_outside_the_bounds():
    rep = check_edge_bound(build_graph(3, [(0, 1), (1, 2), (0, 2)]))
    assert not rep.general_applies and not rep.girth4_applies
    assert not rep.exceeds_general


def test_report_rendering(path3, c5):
    d = check_edge_bound(path3).to_dict()
    assert d["girth"] is None
    assert d["bound_girth4"] == "2"
    assert d["bound_general"] == "5/2"
    lines = [line.split() for line in check_edge_bound(c5).to_text().splitlines()]
    assert ["girth", "5"] in lines
    assert ["tight_general", "false"] in lines
    assert ["girth", "inf"] in [line.split() for line in check_edge_bound(path3).to_text().splitlines()]
