import itertools
import json
import random

import networkx as nx
import pytest

from wlgenus.corpus import random_rotation_systems, torus_grid, toroidal_k33, toroidal_k5
from wlgenus.graph import ColouredGraph, complete_bipartite, complete_graph, cycle_graph, path_graph
from wlgenus.surface import (
    EmbeddedGraph,
    GenusBudgetExceeded,
    NotACycleError,
    cut_along_cycle,
    cycles_of_length,
    embedding_euler_genus,
    enumerate_cycles,
    genus_lower_bound,
    graph_euler_genus,
    is_contractible,
    is_orientable,
    minimum_genus_embedding,
    noncontractible_cycles,
    planar_embedding,
    random_embedding,
    shortest_noncontractible_cycle,
    sorted_embedding,
    trace_faces,
)


def _face_lengths(E):
    return sorted(len(f.darts) for f in trace_faces(E))


class TestFaces:
    def test_triangle(self):
        E = planar_embedding(cycle_graph(3))
        assert _face_lengths(E) == [3, 3]
        assert embedding_euler_genus(E) == 0

    def test_single_edge(self):
        E = sorted_embedding(path_graph(2))
        assert _face_lengths(E) == [2]

    def test_toroidal_k5(self):
        E = toroidal_k5()
        assert _face_lengths(E) == [4] * 5
        assert embedding_euler_genus(E) == 2 and is_orientable(E)

    def test_torus_grid(self):
        E = torus_grid(3, 3)
        assert E.graph.n == 9 and len(E.graph.edges) == 18
        assert _face_lengths(E) == [4] * 9
        assert embedding_euler_genus(E) == 2

    def test_trees_are_planar_with_one_face(self):
        rng = random.Random(0)
        for n in range(2, 9):
            T = ColouredGraph(n, [(i, rng.randrange(i)) for i in range(1, n)])
            E = random_embedding(T, rng, 0.5)
            assert len(trace_faces(E)) == 1 and embedding_euler_genus(E) == 0

    def test_disconnected_rejected(self):
        with pytest.raises(ValueError):
            trace_faces(sorted_embedding(cycle_graph(3).disjoint_union(cycle_graph(3))))

    def test_deterministic_order(self):
        faces = trace_faces(toroidal_k33())
        firsts = [min(f.darts) for f in faces]
        assert firsts == sorted(firsts)

    def test_flip_invariance(self):
        E = toroidal_k5()
        F = E.flip(2).flip(4)
        assert not F.is_all_positive()
        assert embedding_euler_genus(F) == 2 and is_orientable(F)

    def test_json_round_trip(self):
        E = random_embedding(complete_graph(5), random.Random(1), 0.5)
        back = EmbeddedGraph.from_json(json.loads(json.dumps(E.to_json())))
        assert back.rotation == E.rotation and back.signs == E.signs

    def test_projective_plane(self):
        # twisting one edge of planar K4 adds a crosscap
        E = planar_embedding(complete_graph(4))
        signs = dict(E.signs)
        signs[(0, 1)] = -1
        F = EmbeddedGraph(E.graph, E.rotation, signs)
        assert not is_orientable(F)
        # two faces merge into one, so f drops from 4 to 3
        assert len(trace_faces(F)) == 3 and embedding_euler_genus(F) == 1


class TestGenus:
    def test_ground_truths(self):
        assert graph_euler_genus(complete_graph(4)) == 0
        assert graph_euler_genus(complete_graph(5)) == 1
        assert graph_euler_genus(complete_bipartite(3, 3)) == 1

    def test_planar_family(self):
        assert graph_euler_genus(cycle_graph(6)) == 0
        assert graph_euler_genus(nx_to_graph(nx.petersen_graph()), budget=None) == 1

    def test_minimum_embedding_achieves_value(self):
        E = minimum_genus_embedding(complete_graph(5))
        assert embedding_euler_genus(E) == 1

    def test_upper_bounds_embeddings(self):
        rng = random.Random(4)
        G = complete_bipartite(3, 3)
        g = graph_euler_genus(G)
        for _ in range(30):
            assert embedding_euler_genus(random_embedding(G, rng, 0.4)) >= g

    def test_lower_bound(self):
        assert genus_lower_bound(complete_graph(5)) == 1
        assert genus_lower_bound(complete_graph(4)) == 0

    def test_budget_exceeded_reports_bounds(self):
        with pytest.raises(GenusBudgetExceeded) as info:
            graph_euler_genus(complete_graph(7), budget=50)
        assert info.value.lower_bound <= info.value.upper_bound


def nx_to_graph(H):
    return ColouredGraph(H.number_of_nodes(), H.edges())


class TestCycles:
    def test_check(self):
        G = cycle_graph(5)
        with pytest.raises(NotACycleError):
            is_contractible(planar_embedding(G), [0, 1, 3])
        with pytest.raises(NotACycleError):
            cut_along_cycle(planar_embedding(G), [0, 1])

    def test_enumeration_counts(self):
        assert len(cycles_of_length(complete_graph(4), 3)) == 4
        assert len(cycles_of_length(complete_graph(4), 4)) == 3
        assert len(list(enumerate_cycles(complete_graph(5)))) == 37

    def test_planar_all_contractible(self):
        E = planar_embedding(nx_to_graph(nx.icosahedral_graph()))
        assert shortest_noncontractible_cycle(E) is None
        for C in itertools.islice(enumerate_cycles(E.graph, 5), 200):
            assert is_contractible(E, C)

    def test_facial_cycle_disk(self):
        E = planar_embedding(complete_graph(4))
        pieces = cut_along_cycle(E, (0, 1, 2))
        assert len(pieces) == 2
        assert all(embedding_euler_genus(P) == 0 for P in pieces)

    def test_torus_meridian(self):
        E = torus_grid(3, 3)
        assert not is_contractible(E, (0, 1, 2))
        (P,) = cut_along_cycle(E, (0, 1, 2))
        assert embedding_euler_genus(P) == 0
        assert P.graph.n == 12

    def test_shortest_examples(self):
        C = shortest_noncontractible_cycle(torus_grid(3, 3))
        assert len(C) == 3
        C = shortest_noncontractible_cycle(toroidal_k5())
        assert len(C) == 3 and not is_contractible(toroidal_k5(), C)
        assert len(shortest_noncontractible_cycle(torus_grid(4, 4))) == 4

    def test_genus_four_cut(self):
        rng = random.Random(0)
        while True:
            E = random_embedding(complete_graph(5), rng)
            if embedding_euler_genus(E) == 4:
                break
        C = shortest_noncontractible_cycle(E)
        pieces = cut_along_cycle(E, C)
        assert sum(embedding_euler_genus(P) for P in pieces) <= 3

    def test_origin_maps_back(self):
        E = torus_grid(3, 4)
        for P in cut_along_cycle(E, (0, 1, 2, 3)):
            for a, b in P.graph.edges:
                assert E.graph.adjacent(P.origin[a], P.origin[b])


def _internally_disjoint_triples(G, cutoff):
    H = G.to_networkx()
    for s, t in itertools.combinations(range(G.n), 2):
        paths = [tuple(p) for p in nx.all_simple_paths(H, s, t, cutoff=cutoff)]
        for a, b, c in itertools.combinations(paths, 3):
            inner = [set(p[1:-1]) for p in (a, b, c)]
            if inner[0] & inner[1] or inner[1] & inner[2] or inner[0] & inner[2]:
                continue
            yield a, b, c


def _union_cycle(a, b):
    return a + tuple(reversed(b[1:-1]))


@pytest.mark.parametrize("E", [torus_grid(3, 3), toroidal_k5(), toroidal_k33()], ids=["grid", "k5", "k33"])
def test_three_curves(E):
    checked = 0
    for a, b, c in _internally_disjoint_triples(E.graph, 4):
        if len(a) == 2 and len(b) == 2:
            continue
        pairs = [(a, b), (b, c), (a, c)]
        if any(len(x) + len(y) - 2 < 3 for x, y in pairs):
            continue
        flags = [is_contractible(E, _union_cycle(x, y)) for x, y in pairs]
        # any two contractible unions force the third
        assert sum(flags) != 2
        checked += 1
    assert checked > 0


def test_surgery_invariants_small_corpus():
    for E in random_rotation_systems(60, seed=3):
        faces = trace_faces(E)
        assert sum(len(f.darts) for f in faces) == 2 * len(E.graph.edges)
        eg = embedding_euler_genus(E)
        if is_orientable(E):
            assert eg % 2 == 0
        for C in noncontractible_cycles(E):
            assert all(embedding_euler_genus(P) < eg for P in cut_along_cycle(E, C))
