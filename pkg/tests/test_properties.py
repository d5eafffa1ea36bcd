"""Randomised property checks."""

import random

from hypothesis import given, settings
from hypothesis import strategies as st

from wlgenus.corpus import random_connected_graph
from wlgenus.graph import ColouredGraph
from wlgenus.logic import parse, sample_formulas, to_sexpr
from wlgenus.oracles import brute_force_isomorphic
from wlgenus.surface import embedding_euler_genus, graph_euler_genus, is_orientable, random_embedding, trace_faces
from wlgenus.wl import distinguishes, wl_refine


@st.composite
def graphs(draw, max_n=7):
    n = draw(st.integers(1, max_n))
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return ColouredGraph(n, edges)


@st.composite
def graph_and_perm(draw):
    G = draw(graphs())
    perm = draw(st.permutations(range(G.n)))
    return G, list(perm)


@settings(max_examples=60, deadline=None)
@given(graph_and_perm(), st.integers(1, 2))
def test_wl_ignores_relabelling(gp, k):
    G, perm = gp
    assert not distinguishes(G, G.relabel(perm), k)


@settings(max_examples=40, deadline=None)
@given(graphs(6), graphs(6))
def test_wl_is_sound(G, H):
    # k-WL never separates isomorphic graphs
    if brute_force_isomorphic(G, H):
        assert not distinguishes(G, H, 2)


@settings(max_examples=40, deadline=None)
@given(graphs())
def test_refinement_is_monotone(G):
    S = wl_refine(G, 1, audit=True)
    assert S.rounds <= G.n
    # each round's partition refines the previous one
    for before, after in zip(S.history, S.history[1:]):
        assert len({(b, a) for b, a in zip(before, after)}) == len(set(after))


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10_000), st.floats(0.0, 1.0))
def test_euler_formula_for_random_rotations(seed, neg):
    rng = random.Random(seed)
    G = random_connected_graph(rng, max_n=7, max_m=11)
    E = random_embedding(G, rng, neg)
    faces = trace_faces(E)
    assert sum(len(f.darts) for f in faces) == 2 * len(G.edges)
    eg = embedding_euler_genus(E)
    assert eg == 2 - G.n + len(G.edges) - len(faces) >= 0
    if is_orientable(E):
        assert eg % 2 == 0


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_random_embedding_bounds_graph_genus(seed):
    rng = random.Random(seed)
    G = random_connected_graph(rng, max_n=6, max_m=9)
    assert graph_euler_genus(G) <= embedding_euler_genus(random_embedding(G, rng, 0.3))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000), st.integers(2, 4))
def test_formula_text_round_trip(seed, k):
    for phi in sample_formulas(k, 3, seed, count=5):
        assert parse(to_sexpr(phi)) == phi
