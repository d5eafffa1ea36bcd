import itertools

import pytest

from wlgenus.graph import (
    ColouredGraph,
    Multiset,
    Subgraph,
    complete_graph,
    connected_components,
    cycle_graph,
    find_bridges,
    individualise,
    is_k_connected,
    path_graph,
    quotient_contract,
)
from wlgenus.oracles import automorphism_orbits, brute_force_isomorphic, find_isomorphism
from wlgenus.wl import wl_refine


class TestColouredGraph:
    def test_edges_stored_once_and_irreflexive(self):
        G = ColouredGraph(3, [(0, 1), (1, 0), (1, 2)])
        assert G.edges == {(0, 1), (1, 2)}
        with pytest.raises(ValueError):
            ColouredGraph(2, [(1, 1)])

    def test_asymmetric_arc_colours(self):
        G = ColouredGraph(2, [(0, 1)], arc_colours={(0, 1): "a", (1, 0): "b"})
        assert G.chi(0, 1) == "a" and G.chi(1, 0) == "b"

    def test_arc_colour_on_non_edge_rejected(self):
        with pytest.raises(ValueError):
            ColouredGraph(3, [(0, 1)], arc_colours={(0, 2): "a"})

    def test_json_round_trip_with_multisets(self):
        G = quotient_contract(path_graph(3), [0, 2])
        assert ColouredGraph.from_json(G.to_json()) == G

    def test_multiset_is_order_insensitive(self):
        assert Multiset(["a", "b", "a"]) == Multiset(["b", "a", "a"])
        assert Multiset(["a"]) != Multiset(["a", "a"])


class TestQuotient:
    def test_full_contraction(self):
        G = complete_graph(4)
        Q = quotient_contract(G, range(4))
        assert Q.n == 1 and not Q.edges
        assert Q.vertex_colours[0] == Multiset()

    def test_path_ends(self):
        Q = quotient_contract(path_graph(3), [0, 2])
        # b keeps id 0, w is 1
        assert Q.n == 2 and Q.edges == {(0, 1)}
        c0 = path_graph(3).chi(0, 1)
        assert Q.chi(0, 1) == Multiset([c0, c0])
        assert len(Q.chi(1, 0)) == 2

    def test_singleton_keeps_shape(self):
        G = cycle_graph(5)
        Q = quotient_contract(G, [2])
        plain = ColouredGraph(Q.n, Q.edges)
        assert brute_force_isomorphic(plain, G)

    def test_errors(self):
        with pytest.raises(ValueError):
            quotient_contract(path_graph(3), [])
        with pytest.raises(ValueError):
            quotient_contract(path_graph(3), [7])

    def test_disjoint_contractions_commute(self):
        G = cycle_graph(7)
        a = quotient_contract(quotient_contract(G, [0, 1]), [2, 3])  # {2,3} of the renumbered graph
        # renumbered graph drops 0,1 so its vertices 2,3 are the original 4,5
        b = quotient_contract(quotient_contract(G, [4, 5]), [0, 1])
        assert brute_force_isomorphic(a, b)


class TestBridges:
    def test_h_equals_g(self):
        G = complete_graph(4)
        assert find_bridges(G, Subgraph.of(range(4), G.edges)) == []

    def test_k4_triangle(self):
        G = complete_graph(4)
        H = Subgraph.induced(G, [0, 1, 2])
        (B,) = find_bridges(G, H)
        assert B.attachment == {0, 1, 2}
        assert B.edges == {(0, 3), (1, 3), (2, 3)}

    def test_c5_path(self):
        G = cycle_graph(5)
        (B,) = find_bridges(G, Subgraph.of([0, 1, 2], [(0, 1), (1, 2)]))
        assert B.vertices == {0, 2, 3, 4} and B.attachment == {0, 2}

    def test_trivial_bridge(self):
        G = complete_graph(3)
        (B,) = find_bridges(G, Subgraph.of([0, 1, 2], [(0, 1), (1, 2)]))
        assert B.trivial and B.edges == {(0, 2)}

    def test_bridges_partition_residual_edges(self):
        G = complete_graph(6)
        H = Subgraph.of([0, 1, 2], [(0, 1)])
        bridges = find_bridges(G, H)
        seen = [e for B in bridges for e in B.edges]
        assert sorted(seen) == sorted(G.edges - H.edges)

    def test_not_a_subgraph(self):
        with pytest.raises(ValueError):
            find_bridges(path_graph(3), Subgraph.of([0, 2], [(0, 2)]))


class TestConnectivity:
    def test_examples(self):
        assert is_k_connected(complete_graph(4), 3)
        assert not is_k_connected(cycle_graph(5), 3)
        assert not is_k_connected(complete_graph(4), 4)

    def test_monotone(self):
        for G in (complete_graph(5), cycle_graph(6), path_graph(4)):
            for k in range(2, 5):
                if is_k_connected(G, k):
                    assert is_k_connected(G, k - 1)

    def test_components(self):
        G = cycle_graph(6)
        assert connected_components(G) == [frozenset(range(6))]
        comps = connected_components(G, [0, 3])
        assert sorted(map(len, comps)) == [2, 2]
        assert connected_components(G, range(6)) == []


class TestIndividualise:
    def test_empty_is_identity(self):
        G = cycle_graph(4)
        assert individualise(G, []) == G

    def test_all_vertices_rigid(self):
        G = complete_graph(4)
        orbits = automorphism_orbits(individualise(G, list(range(4))))
        assert all(len(o) == 1 for o in orbits)

    def test_c4_three_classes(self):
        S = wl_refine(individualise(cycle_graph(4), [0]), 1)
        assert S.num_classes() == 3

    def test_errors(self):
        with pytest.raises(ValueError):
            individualise(cycle_graph(4), [1, 1])
        with pytest.raises(ValueError):
            individualise(cycle_graph(4), [9])

    def test_equivariance(self):
        G = cycle_graph(6)
        perm = [3, 4, 5, 0, 1, 2]
        H = G.relabel(perm)
        for vs in itertools.permutations(range(6), 2):
            a = individualise(G, list(vs))
            b = individualise(H, [perm[v] for v in vs])
            assert find_isomorphism(a, b) is not None
