"""Arc-coloured graphs and the basic operations on them.

Vertices are the integers ``0..n-1``. A colour is either an atom (a string),
an :class:`IndividualColour` produced by :func:`individualise`, or a
:class:`Multiset` of colours; quotients produce nested multisets.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Any, Iterable, Iterator, Sequence

VERTEX_COLOUR = "0"
ARC_COLOUR = "1"


def colour_key(c) -> tuple:
    """Total order on colour terms, used for canonical multiset storage."""
    if isinstance(c, str):
        return (0, c)
    if isinstance(c, IndividualColour):
        return (1, c.level, c.index, colour_key(c.base))
    if isinstance(c, Multiset):
        return (2, len(c.items), tuple(colour_key(x) for x in c.items))
    raise TypeError(f"not a colour term: {c!r}")


class Multiset:
    """Finite multiset of colours, compared order-insensitively."""

    __slots__ = ("items", "_hash")

    def __init__(self, items: Iterable = ()):
        self.items = tuple(sorted(items, key=colour_key))
        self._hash = hash(("multiset",) + self.items)

    def __eq__(self, other):
        return isinstance(other, Multiset) and self.items == other.items

    def __hash__(self):
        return self._hash

    def __len__(self):
        return len(self.items)

    def __iter__(self):
        return iter(self.items)

    def __repr__(self):
        return "{{" + ", ".join(map(repr, self.items)) + "}}"


@dataclass(frozen=True)
class IndividualColour:
    """Colour given to the ``index``-th individualised vertex.

    ``level`` keeps repeated individualisations apart; ``base`` is the colour
    the vertex carried before, so colour preservation still sees it.
    """

    index: int
    level: int
    base: Any


def colour_to_json(c):
    if isinstance(c, str):
        return c
    if isinstance(c, Multiset):
        return {"multiset": [colour_to_json(x) for x in c.items]}
    if isinstance(c, IndividualColour):
        return {"individual": c.index, "level": c.level, "base": colour_to_json(c.base)}
    raise TypeError(f"not a colour term: {c!r}")


def colour_from_json(obj):
    if isinstance(obj, str):
        return obj
    if isinstance(obj, (int, float)) and not isinstance(obj, bool):
        return str(obj)
    if isinstance(obj, dict):
        if "multiset" in obj:
            return Multiset(colour_from_json(x) for x in obj["multiset"])
        if "individual" in obj:
            return IndividualColour(
                int(obj["individual"]), int(obj.get("level", 1)), colour_from_json(obj.get("base", VERTEX_COLOUR))
            )
    raise ValueError(f"bad colour term: {obj!r}")


def _edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


class ColouredGraph:
    """Finite simple graph with an arc colouring ``chi``.

    ``chi(u, u)`` is the vertex colour of ``u``; ``chi(u, v)`` for an edge
    ``uv`` is the colour of the arc from ``u`` to ``v`` and may differ from
    ``chi(v, u)``. Instances are immutable.
    """

    __slots__ = ("n", "edges", "vertex_colours", "_arc", "_adj", "_hash")

    def __init__(
        self,
        n: int,
        edges: Iterable[Sequence[int]] = (),
        vertex_colours: Sequence | None = None,
        arc_colours: dict | None = None,
    ):
        if n < 0:
            raise ValueError("negative order")
        es = set()
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {e} out of range for n={n}")
            es.add(_edge(u, v))
        self.n = n
        self.edges = frozenset(es)
        if vertex_colours is None:
            self.vertex_colours = (VERTEX_COLOUR,) * n
        else:
            if len(vertex_colours) != n:
                raise ValueError("vertex_colours must have length n")
            self.vertex_colours = tuple(vertex_colours)
        arc = {}
        for (u, v), c in (arc_colours or {}).items():
            if _edge(u, v) not in self.edges:
                raise ValueError(f"arc colour on non-edge ({u}, {v})")
            if c != ARC_COLOUR:
                arc[(u, v)] = c
        self._arc = arc
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in es:
            adj[u].add(v)
            adj[v].add(u)
        self._adj = tuple(frozenset(a) for a in adj)
        self._hash = None

    # -- basic accessors ---------------------------------------------------

    def __len__(self):
        return self.n

    @property
    def vertices(self) -> range:
        return range(self.n)

    def neighbours(self, v: int) -> frozenset[int]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def adjacent(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def chi(self, u: int, v: int):
        if u == v:
            return self.vertex_colours[u]
        if v not in self._adj[u]:
            raise KeyError(f"({u}, {v}) is not an arc")
        return self._arc.get((u, v), ARC_COLOUR)

    def arcs(self) -> Iterator[tuple[int, int]]:
        for u, v in sorted(self.edges):
            yield (u, v)
            yield (v, u)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    @property
    def arc_colours(self) -> dict:
        return dict(self._arc)

    def is_uniformly_arc_coloured(self) -> bool:
        return not self._arc

    def colour_universe(self) -> frozenset:
        cols = set(self.vertex_colours)
        cols.update(self.chi(u, v) for u, v in self.arcs())
        return frozenset(cols)

    def __eq__(self, other):
        return (
            isinstance(other, ColouredGraph)
            and self.n == other.n
            and self.edges == other.edges
            and self.vertex_colours == other.vertex_colours
            and self._arc == other._arc
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, self.edges, self.vertex_colours, frozenset(self._arc.items())))
        return self._hash

    def __repr__(self):
        return f"ColouredGraph(n={self.n}, m={len(self.edges)})"

    # -- derived graphs ----------------------------------------------------

    def with_vertex_colours(self, colours: Sequence) -> "ColouredGraph":
        return ColouredGraph(self.n, self.edges, colours, self._arc)

    def relabel(self, perm: Sequence[int]) -> "ColouredGraph":
        """Image of this graph under the bijection ``v -> perm[v]``."""
        if sorted(perm) != list(range(self.n)):
            raise ValueError("not a permutation")
        vc = [None] * self.n
        for v in range(self.n):
            vc[perm[v]] = self.vertex_colours[v]
        arcs = {(perm[u], perm[v]): c for (u, v), c in self._arc.items()}
        return ColouredGraph(self.n, [(perm[u], perm[v]) for u, v in self.edges], vc, arcs)

    def induced(self, keep: Iterable[int]) -> tuple["ColouredGraph", list[int]]:
        """Induced subgraph on ``keep``, compacted; returns it with the old ids."""
        old = sorted(set(keep))
        new = {v: i for i, v in enumerate(old)}
        edges = [(new[u], new[v]) for u, v in self.edges if u in new and v in new]
        arcs = {(new[u], new[v]): c for (u, v), c in self._arc.items() if u in new and v in new}
        return ColouredGraph(len(old), edges, [self.vertex_colours[v] for v in old], arcs), old

    def remove(self, drop: Iterable[int]) -> tuple["ColouredGraph", list[int]]:
        drop = set(drop)
        return self.induced(v for v in range(self.n) if v not in drop)

    def edge_subgraph(self, vertices: Iterable[int], edges: Iterable[Sequence[int]]) -> tuple["ColouredGraph", list[int]]:
        """Subgraph with the given vertices and edges (not necessarily induced), compacted."""
        old = sorted(set(vertices))
        new = {v: i for i, v in enumerate(old)}
        es = [_edge(*e) for e in edges]
        for u, v in es:
            if (u, v) not in self.edges or u not in new or v not in new:
                raise ValueError(f"edge {(u, v)} not available")
        arcs = {
            (new[u], new[v]): self._arc[(u, v)]
            for (a, b) in es
            for (u, v) in ((a, b), (b, a))
            if (u, v) in self._arc
        }
        return ColouredGraph(len(old), [(new[u], new[v]) for u, v in es], [self.vertex_colours[v] for v in old], arcs), old

    def disjoint_union(self, other: "ColouredGraph") -> "ColouredGraph":
        off = self.n
        edges = list(self.edges) + [(u + off, v + off) for u, v in other.edges]
        arcs = dict(self._arc)
        arcs.update({(u + off, v + off): c for (u, v), c in other._arc.items()})
        return ColouredGraph(self.n + other.n, edges, self.vertex_colours + other.vertex_colours, arcs)

    def is_connected(self) -> bool:
        return len(connected_components(self)) <= 1

    def to_networkx(self):
        import networkx as nx

        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges)
        return g

    # -- JSON ----------------------------------------------------------------

    def to_json(self) -> dict:
        out: dict[str, Any] = {"n": self.n, "edges": [list(e) for e in sorted(self.edges)]}
        if any(c != VERTEX_COLOUR for c in self.vertex_colours):
            out["vertex_colours"] = [colour_to_json(c) for c in self.vertex_colours]
        if self._arc:
            out["arc_colours"] = [[u, v, colour_to_json(c)] for (u, v), c in sorted(self._arc.items())]
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "ColouredGraph":
        vc = obj.get("vertex_colours")
        arcs = {(int(u), int(v)): colour_from_json(c) for u, v, c in obj.get("arc_colours", [])}
        return cls(
            int(obj["n"]),
            [tuple(e) for e in obj.get("edges", [])],
            None if vc is None else [colour_from_json(c) for c in vc],
            arcs,
        )

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


@dataclass(frozen=True)
class Subgraph:
    """A subgraph H of some host graph, as vertex and edge sets."""

    vertices: frozenset
    edges: frozenset

    @classmethod
    def of(cls, vertices: Iterable[int], edges: Iterable[Sequence[int]] = ()) -> "Subgraph":
        return cls(frozenset(vertices), frozenset(_edge(*e) for e in edges))

    @classmethod
    def induced(cls, G: ColouredGraph, vertices: Iterable[int]) -> "Subgraph":
        vs = frozenset(vertices)
        return cls(vs, frozenset(e for e in G.edges if e[0] in vs and e[1] in vs))


@dataclass(frozen=True)
class Bridge:
    vertices: frozenset
    edges: frozenset
    attachment: frozenset

    @property
    def trivial(self) -> bool:
        return len(self.vertices) == 2 and len(self.edges) == 1 and self.attachment == self.vertices


def connected_components(G: ColouredGraph, excluded: Iterable[int] = ()) -> list[frozenset]:
    """Components of ``G - excluded``, ordered by least vertex."""
    excluded = set(excluded)
    for v in excluded:
        if not 0 <= v < G.n:
            raise ValueError(f"vertex {v} not in graph")
    seen = set(excluded)
    comps = []
    for s in range(G.n):
        if s in seen:
            continue
        seen.add(s)
        comp = [s]
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in G.neighbours(x):
                if y not in seen:
                    seen.add(y)
                    comp.append(y)
                    queue.append(y)
        comps.append(frozenset(comp))
    return comps


def quotient_contract(G: ColouredGraph, W: Iterable[int]) -> ColouredGraph:
    """The graph G/W with multiset arc colours.

    Surviving vertices keep their relative order and are renumbered
    ``0..n-|W|-1``; the contracted vertex ``w`` is ``n-|W|``. Arc colours
    towards and from ``w`` collect the colours of the arcs into and out of
    ``W``; the rule for arcs out of ``w`` reads chi, not chi', so it is the
    mirror image of the rule for arcs into ``w``.
    """
    W = set(W)
    if not W:
        raise ValueError("W must be nonempty")
    if any(not 0 <= w < G.n for w in W):
        raise ValueError("W is not a subset of V(G)")
    rest = [v for v in range(G.n) if v not in W]
    new = {v: i for i, v in enumerate(rest)}
    w = len(rest)
    edges = []
    arcs = {}
    for u, v in G.edges:
        if u in new and v in new:
            edges.append((new[u], new[v]))
            arcs[(new[u], new[v])] = G.chi(u, v)
            arcs[(new[v], new[u])] = G.chi(v, u)
    for u in rest:
        into = [G.chi(u, x) for x in G.neighbours(u) if x in W]
        if into:
            out = [G.chi(x, u) for x in G.neighbours(u) if x in W]
            edges.append((new[u], w))
            arcs[(new[u], w)] = Multiset(into)
            arcs[(w, new[u])] = Multiset(out)
    vc = [G.vertex_colours[v] for v in rest] + [Multiset()]
    return ColouredGraph(w + 1, edges, vc, arcs)


def find_bridges(G: ColouredGraph, H: Subgraph) -> list[Bridge]:
    """All H-bridges of G: trivial ones first (by edge), then one per component of G - V(H)."""
    if any(not 0 <= v < G.n for v in H.vertices) or not H.edges <= G.edges:
        raise ValueError("H is not a subgraph of G")
    if any(u not in H.vertices or v not in H.vertices for u, v in H.edges):
        raise ValueError("H has an edge with an endpoint outside V(H)")
    out = []
    for u, v in sorted(G.edges - H.edges):
        if u in H.vertices and v in H.vertices:
            out.append(Bridge(frozenset((u, v)), frozenset([(u, v)]), frozenset((u, v))))
    for comp in connected_components(G, H.vertices):
        att = frozenset(y for x in comp for y in G.neighbours(x) if y in H.vertices)
        es = frozenset(e for e in G.edges if e[0] in comp or e[1] in comp)
        out.append(Bridge(comp | att, es, att))
    return out


def is_k_connected(G: ColouredGraph, k: int) -> bool:
    if k < 1:
        raise ValueError("k must be at least 1")
    if G.n <= k:
        return False
    for size in range(k):
        for S in combinations(range(G.n), size):
            if len(connected_components(G, S)) != 1:
                return False
    return True


def individualise(G: ColouredGraph, vs: Sequence[int]) -> ColouredGraph:
    """G_{v_1..v_l}: vertex ``vs[i]`` gets a fresh colour carrying ``i``."""
    if len(set(vs)) != len(vs):
        raise ValueError("duplicate vertices")
    if any(not 0 <= v < G.n for v in vs):
        raise ValueError("vertex out of range")
    if not vs:
        return G
    level = 1 + max(
        (c.level for c in G.vertex_colours if isinstance(c, IndividualColour)),
        default=0,
    )
    vc = list(G.vertex_colours)
    for i, v in enumerate(vs):
        vc[v] = IndividualColour(i, level, vc[v])
    return G.with_vertex_colours(vc)


def read_graph(path) -> ColouredGraph:
    with open(path, encoding="utf-8") as fh:
        return ColouredGraph.from_json(json.load(fh))


def write_graph(G: ColouredGraph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(G.to_json(), fh, sort_keys=True)
        fh.write("\n")


# -- small named graphs --------------------------------------------------------


def path_graph(n: int) -> ColouredGraph:
    return ColouredGraph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> ColouredGraph:
    return ColouredGraph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> ColouredGraph:
    return ColouredGraph(n, combinations(range(n), 2))


def complete_bipartite(a: int, b: int) -> ColouredGraph:
    return ColouredGraph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def empty_graph(n: int) -> ColouredGraph:
    return ColouredGraph(n)
