import itertools
import random

import numpy as np
import pytest

from wlgenus.graph import ColouredGraph, complete_graph, cycle_graph, path_graph
from wlgenus.oracles import brute_force_isomorphic, enumerate_graphs, enumerate_trees
from wlgenus.wl import (
    ColourTable,
    atomic_type,
    colour_refinement,
    determines_orbits_check,
    distinguishes,
    identifies_within,
    refine_jointly,
    wl_dimension_within,
    wl_refine,
    _partition,
)


class TestAtomicType:
    def test_loops_equal(self):
        G = path_graph(3)
        assert atomic_type(G, (0, 0)) == atomic_type(G, (2, 2))

    def test_adjacency_matters(self):
        G = path_graph(3)
        assert atomic_type(G, (0, 1)) != atomic_type(G, (0, 2))

    def test_arc_orientation(self):
        G = ColouredGraph(2, [(0, 1)], arc_colours={(0, 1): "a", (1, 0): "b"})
        assert atomic_type(G, (0, 1)) != atomic_type(G, (1, 0))

    def test_equality_pattern(self):
        G = complete_graph(3)
        assert atomic_type(G, (0, 0, 1)) != atomic_type(G, (0, 1, 1))

    def test_empty_tuple(self):
        with pytest.raises(ValueError):
            atomic_type(path_graph(2), ())


class TestRefine:
    def test_complete_single_class(self):
        assert wl_refine(complete_graph(5), 1).num_classes() == 1

    def test_c6_vs_two_triangles(self, c6, two_triangles):
        a, b = refine_jointly([c6, two_triangles], 1)
        assert a.histogram() == b.histogram()
        assert not distinguishes(c6, two_triangles, 1)
        assert distinguishes(c6, two_triangles, 2)

    def test_self_never_distinguished(self):
        for G in enumerate_graphs(4):
            for k in (1, 2, 3):
                assert not distinguishes(G, G, k)

    def test_k_must_be_positive(self):
        with pytest.raises(ValueError):
            wl_refine(path_graph(3), 0)

    def test_json_shape(self, p4):
        S = wl_refine(p4, 2)
        js = S.to_json()
        assert js["k"] == 2 and js["rounds"] == S.rounds
        assert sum(c["count"] for c in js["classes"]) == 16
        for c in js["classes"]:
            assert S.colour(c["representative"]) == c["colour"]

    def test_audit_history_refines(self):
        G = path_graph(6)
        S = wl_refine(G, 2, audit=True)
        parts = [_partition(C.reshape(-1).tolist()) for C in S.history]
        for coarse, fine in zip(parts, parts[1:]):
            assert all(any(b <= a for a in coarse) for b in fine)
            assert len(fine) > len(coarse)
        assert S.rounds <= G.n**2

    def test_fast_path_agrees_with_generic(self):
        rng = random.Random(5)
        for G in itertools.islice(enumerate_graphs(6), 0, None, 7):
            H = G.relabel(rng.sample(range(6), 6))
            generic = _partition(wl_refine(G, 1).vertex_colours())
            fast = _partition(colour_refinement(G)[-1])
            assert generic == fast
            assert distinguishes(G, H, 1) is False

    def test_colouring_is_equivariant(self):
        G = path_graph(5)
        S = wl_refine(G, 2)
        mirror = [4, 3, 2, 1, 0]
        for u, v in itertools.product(range(5), repeat=2):
            assert S.colour((u, v)) == S.colour((mirror[u], mirror[v]))

    def test_shared_table_comparable(self, c6, two_triangles):
        table = ColourTable()
        a = wl_refine(c6, 2, table=table)
        b = wl_refine(two_triangles, 2, table=table)
        assert a.histogram() != b.histogram()


class TestIdentification:
    def test_singleton_family(self, c6):
        assert identifies_within(c6, 1, [c6])

    def test_trees_identified_by_1wl(self):
        trees = list(enumerate_trees(7))
        for T in trees:
            assert identifies_within(T, 1, trees)

    def test_c6_dimension_two(self, c6):
        family = list(enumerate_graphs(6))
        assert wl_dimension_within(c6, family, 3) == 2

    def test_single_vertex(self):
        G = ColouredGraph(1)
        assert wl_dimension_within(G, list(enumerate_graphs(1)), 2) == 1

    def test_not_found(self, c6, two_triangles):
        assert wl_dimension_within(c6, [c6, two_triangles], 1) is None

    def test_soundness_small(self):
        graphs = list(enumerate_graphs(5))
        for G, H in itertools.combinations(graphs, 2):
            if distinguishes(G, H, 1):
                assert not brute_force_isomorphic(G, H)


class TestOrbits:
    def test_c5(self):
        assert determines_orbits_check(cycle_graph(5), 1)

    def test_p4(self):
        assert determines_orbits_check(path_graph(4), 1)
        assert wl_refine(path_graph(4), 1).num_classes() == 2

    def test_regular_but_not_transitive(self):
        # 2-regular, so 1-WL sees one class, yet triangle and square vertices form two orbits
        G = cycle_graph(3).disjoint_union(cycle_graph(4))
        assert not determines_orbits_check(G, 1)
        assert determines_orbits_check(G, 2)


def test_bit_identical_runs():
    G = cycle_graph(7)
    a, b = wl_refine(G, 2), wl_refine(G, 2)
    assert np.array_equal(a.colouring, b.colouring)
