import pytest

from wlgenus.cfi import CFIError, cfi_pair, cfi_threshold, expected_size, twist_absorbable
from wlgenus.graph import ColouredGraph, complete_graph, cycle_graph, path_graph
from wlgenus.wl import distinguishes


def test_size_formula():
    for base in (cycle_graph(3), cycle_graph(5), complete_graph(4)):
        pair = cfi_pair(base)
        assert pair.size == expected_size(base) == pair.twisted.n
    assert cfi_pair(complete_graph(4)).size == 40


def test_twist_on_least_edge():
    pair = cfi_pair(complete_graph(4))
    assert pair.twist_edge == (0, 1)
    assert len(pair.untwisted.edges) == len(pair.twisted.edges)
    assert pair.untwisted.edges != pair.twisted.edges


def test_colours_follow_origin():
    pair = cfi_pair(cycle_graph(3))
    for lab, colour in zip(pair.labels, pair.untwisted.vertex_colours):
        if lab[0] == "mid":
            assert colour == f"mid:{lab[1]}"
        else:
            assert colour == f"out:{lab[1]}:{lab[2]}"


@pytest.mark.parametrize("base", [ColouredGraph(3, [(0, 1)]), path_graph(3), ColouredGraph(0)])
def test_rejects_bad_bases(base):
    with pytest.raises(CFIError):
        cfi_pair(base)


# Over a cycle both outputs are plain unions of cycles (2 C_{3n} against C_{6n}),
# so 2-WL separates them.
def test_cycle_base():
    pair = cfi_pair(cycle_graph(4))
    assert pair.base_is_cycle
    assert twist_absorbable(pair) is False
    assert cfi_threshold(pair, 3) == 2


def test_k4_low_dimensions():
    pair = cfi_pair(complete_graph(4))
    assert not pair.base_is_cycle
    assert twist_absorbable(pair) is False
    assert not distinguishes(pair.untwisted, pair.twisted, 1)
    assert not distinguishes(pair.untwisted, pair.twisted, 2)


@pytest.mark.slow
def test_k4_threshold():
    assert cfi_threshold(cfi_pair(complete_graph(4)), 3) == 3


def test_threshold_argument():
    with pytest.raises(ValueError):
        cfi_threshold(cfi_pair(cycle_graph(3)), 0)


def test_to_json_round_trip():
    pair = cfi_pair(cycle_graph(3))
    obj = pair.to_json()
    assert ColouredGraph.from_json(obj["twisted"]) == pair.twisted
    assert obj["size"] == pair.size
