import pytest

from wlgenus.graph import ColouredGraph, cycle_graph


@pytest.fixture
def c6():
    return cycle_graph(6)


@pytest.fixture
def two_triangles():
    return cycle_graph(3).disjoint_union(cycle_graph(3))


@pytest.fixture
def p4():
    return ColouredGraph(4, [(0, 1), (1, 2), (2, 3)])
