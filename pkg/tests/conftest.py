import random

import pytest

from delayrobust import TimeArc, build_graph
from helpers import random_route_instance

FIG1_ARCS = [
    TimeArc(0, 1, 3, 1),
    TimeArc(1, 2, 4, 1),
    TimeArc(1, 2, 8, 1),
    TimeArc(2, 3, 5, 1),
    TimeArc(2, 3, 9, 1),
    TimeArc(3, 4, 11, 1),
]
FIG1_NAMES = {0: "s", 1: "a", 2: "b", 3: "c", 4: "z"}
FIG1_ROUTE = (0, 1, 2, 3, 4)


@pytest.fixture
def fig1():
    """Five-vertex path with two parallel connections on the middle hops;
    its only s-z route is robust for one delay of magnitude 3 but not 5."""
    return build_graph(5, FIG1_ARCS)


@pytest.fixture
def two_hop():
    """The two-arc walk a->b->c used for the delay-kind edge cases."""
    return build_graph(3, [TimeArc(0, 1, 1, 1), TimeArc(1, 2, 3, 1)])


@pytest.fixture(scope="session")
def route_corpus():
    """1000 random (graph, route, x, delta) verification instances."""
    rng = random.Random(20240817)
    return [random_route_instance(rng) for _ in range(1000)]
