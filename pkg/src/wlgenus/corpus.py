"""Bundled graphs and embeddings used by the experiments and tests."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from wlgenus.graph import ColouredGraph, complete_bipartite, complete_graph
from wlgenus.surface import EmbeddedGraph, random_embedding


def torus_grid(a: int, b: int) -> EmbeddedGraph:
    """The a x b grid C_a x C_b on the torus; vertex (i, j) is ``i * b + j``.

    Every vertex sees right, up, left, down in that cyclic order, all signs
    positive, so all faces are quadrilaterals.
    """
    if a < 3 or b < 3:
        raise ValueError("both cycle lengths must be at least 3")

    def vid(i, j):
        return (i % a) * b + (j % b)

    edges = set()
    rot = []
    for i in range(a):
        for j in range(b):
            nb = [vid(i, j + 1), vid(i + 1, j), vid(i, j - 1), vid(i - 1, j)]
            rot.append(nb)
            for w in nb:
                edges.add((min(vid(i, j), w), max(vid(i, j), w)))
    return EmbeddedGraph(ColouredGraph(a * b, edges), rot)


def toroidal_k5() -> EmbeddedGraph:
    """K5 on the torus with five quadrilateral faces."""
    rot = [(1, 2, 3, 4), (0, 2, 4, 3), (0, 3, 1, 4), (0, 4, 2, 1), (0, 1, 3, 2)]
    return EmbeddedGraph(complete_graph(5), rot)


def toroidal_k33() -> EmbeddedGraph:
    """K3,3 on the torus with three hexagonal faces (parts {0,1,2} and {3,4,5})."""
    rot = [(3, 4, 5), (3, 4, 5), (3, 4, 5), (0, 1, 2), (0, 1, 2), (0, 1, 2)]
    return EmbeddedGraph(complete_bipartite(3, 3), rot)


@dataclass
class Corpus:
    name: str
    entries: list
    provenance: list = field(default_factory=list)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "entries": [{"embedding" if isinstance(e, EmbeddedGraph) else "graph": e.to_json(), "provenance": p} for e, p in zip(self.entries, self.provenance)],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Corpus":
        entries, prov = [], []
        for item in obj["entries"]:
            if "embedding" in item:
                entries.append(EmbeddedGraph.from_json(item["embedding"]))
            else:
                entries.append(ColouredGraph.from_json(item["graph"]))
            prov.append(item.get("provenance", ""))
        return cls(obj["name"], entries, prov)


def torus_corpus() -> Corpus:
    items = [
        (torus_grid(3, 3), "C3 x C3 grid"),
        (torus_grid(4, 4), "C4 x C4 grid"),
        (toroidal_k5(), "K5, five quadrilateral faces"),
        (toroidal_k33(), "K3,3, three hexagonal faces"),
    ]
    return Corpus("torus", [e for e, _ in items], [p for _, p in items])


def random_connected_graph(rng: random.Random, max_n: int = 8, max_m: int = 14, min_n: int = 3) -> ColouredGraph:
    """A connected graph with n <= max_n and m <= max_m: random spanning tree plus extra edges."""
    n = rng.randint(min_n, max_n)
    order = list(range(n))
    rng.shuffle(order)
    edges = {tuple(sorted((order[i], order[rng.randrange(i)]))) for i in range(1, n)}
    others = [(a, b) for a in range(n) for b in range(a + 1, n) if (a, b) not in edges]
    rng.shuffle(others)
    extra = rng.randint(0, min(len(others), max_m - len(edges)))
    edges |= set(others[:extra])
    return ColouredGraph(n, edges)


def random_rotation_systems(count: int, seed: int, max_n: int = 8, max_m: int = 14, negative_prob: float = 0.3) -> Corpus:
    rng = random.Random(seed)
    out, prov = [], []
    for i in range(count):
        G = random_connected_graph(rng, max_n, max_m)
        out.append(random_embedding(G, rng, negative_prob))
        prov.append(f"seed {seed} item {i}")
    return Corpus(f"random-rotations-{seed}", out, prov)
