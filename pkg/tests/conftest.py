import pytest

import cache_ttl
import perf
from constructions import named, random_fragile, tight_chain
from core import build_graph


@pytest.fixture
def k4():
    return named("k4")


@pytest.fixture
def c5():
    return named("c5")


@pytest.fixture
def petersen():
    return named("petersen")


@pytest.fixture
def diamond():
    # K4 minus the edge 2-3
    return tight_chain(1)


@pytest.fixture
def path3():
    return build_graph(3, [(0, 1), (1, 2)])


@pytest.fixture
def small_fragile():
    return [random_fragile(n, seed) for seed, n in enumerate((5, 7, 9, 11, 12))]


@pytest.fixture(autouse=True)
def _fresh_state():
    perf.disable()
    cache_ttl.clear()
    yield
    perf.disable()
