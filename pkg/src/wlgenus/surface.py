"""Combinatorial surface embeddings: signed rotation systems.

An embedding is a cyclic order of neighbours at every vertex (the rotation)
together with a sign per edge; a negative edge reverses the local
orientation when crossed. Faces are computed on flags ``(dart, side)`` with
the three involutions of a generalised map:

* ``a1`` swaps ``(d, +1)`` with ``(succ(d), -1)`` around the tail of ``d``,
* ``a0`` swaps ``(d, e)`` with ``(reverse(d), -e * sign)`` along the edge,
* ``a2`` swaps the two sides of a dart.

Faces are the orbits of the group generated by ``a0`` and ``a1``; an orbit of
``2L`` flags is a face of length ``L``.
"""

from __future__ import annotations

import itertools
import random
import time
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import networkx as nx

from wlgenus.graph import ColouredGraph, connected_components

Cycle = tuple  # cyclic vertex sequence


class NotACycleError(ValueError):
    pass


class GenusBudgetExceeded(RuntimeError):
    """The genus search ran out of budget; carries the bounds known so far."""

    def __init__(self, lower_bound: int, upper_bound: int, embedding: "EmbeddedGraph | None" = None):
        super().__init__(f"genus search budget exhausted; Euler genus in [{lower_bound}, {upper_bound}]")
        self.lower_bound = lower_bound
        self.upper_bound = upper_bound
        self.embedding = embedding


@dataclass(frozen=True)
class Face:
    """Boundary walk as a cyclic sequence of darts ``(tail, head)``."""

    darts: tuple

    def __len__(self):
        return len(self.darts)

    @property
    def vertices(self) -> tuple:
        return tuple(d[0] for d in self.darts)

    @property
    def edges(self) -> frozenset:
        return frozenset((min(d), max(d)) for d in self.darts)


class EmbeddedGraph:
    """A connected graph with a signed rotation system.

    ``rotation[v]`` lists the neighbours of v in cyclic order; ``signs`` maps
    each edge ``(u, v)`` with ``u < v`` to +1 or -1. ``origin[v]`` names the
    vertex of some ancestor graph that v was copied from (identity unless the
    embedding came out of a cut).
    """

    __slots__ = ("graph", "rotation", "signs", "origin", "_pos", "_faces")

    def __init__(self, graph: ColouredGraph, rotation: Sequence[Sequence[int]], signs: dict | None = None, origin: Sequence[int] | None = None):
        if len(rotation) != graph.n:
            raise ValueError("need one rotation per vertex")
        rot = tuple(tuple(int(w) for w in r) for r in rotation)
        for v, r in enumerate(rot):
            if len(r) != len(set(r)) or set(r) != set(graph.neighbours(v)):
                raise ValueError(f"rotation at {v} is not a cyclic order of its neighbours")
        sg = {}
        for e in graph.sorted_edges():
            s = 1 if signs is None else signs.get(e, 1)
            if s not in (1, -1):
                raise ValueError(f"edge sign must be +1 or -1, got {s!r}")
            sg[e] = s
        if signs is not None:
            for e in signs:
                if (min(e), max(e)) not in graph.edges:
                    raise ValueError(f"sign given for non-edge {e}")
        self.graph = graph
        self.rotation = rot
        self.signs = sg
        self.origin = tuple(range(graph.n)) if origin is None else tuple(origin)
        if len(self.origin) != graph.n:
            raise ValueError("origin must have one entry per vertex")
        self._pos = tuple({w: i for i, w in enumerate(r)} for r in rot)
        self._faces = None

    # -- basics ----------------------------------------------------------------

    @property
    def n(self) -> int:
        return self.graph.n

    def sign(self, u: int, v: int) -> int:
        return self.signs[(min(u, v), max(u, v))]

    def succ(self, v: int, w: int, step: int = 1) -> int:
        r = self.rotation[v]
        return r[(self._pos[v][w] + step) % len(r)]

    def is_all_positive(self) -> bool:
        return all(s == 1 for s in self.signs.values())

    def __eq__(self, other):
        return (
            isinstance(other, EmbeddedGraph)
            and self.graph == other.graph
            and self.rotation == other.rotation
            and self.signs == other.signs
            and self.origin == other.origin
        )

    def __hash__(self):
        return hash((self.graph, self.rotation, tuple(sorted(self.signs.items()))))

    def __repr__(self):
        return f"EmbeddedGraph(n={self.n}, m={len(self.graph.edges)}, eg={embedding_euler_genus(self)})"

    # -- transformations -----------------------------------------------------------

    def flip(self, v: int) -> "EmbeddedGraph":
        """Reverse the local orientation at v; the embedding is unchanged up to homeomorphism."""
        rot = list(self.rotation)
        rot[v] = tuple(reversed(rot[v]))
        signs = dict(self.signs)
        for w in self.graph.neighbours(v):
            e = (min(v, w), max(v, w))
            signs[e] = -signs[e]
        return EmbeddedGraph(self.graph, rot, signs, self.origin)

    def mirror(self) -> "EmbeddedGraph":
        return EmbeddedGraph(self.graph, [tuple(reversed(r)) for r in self.rotation], self.signs, self.origin)

    def relabel(self, perm: Sequence[int]) -> "EmbeddedGraph":
        """Image under the vertex bijection ``v -> perm[v]``."""
        inv = [0] * self.n
        for v, p in enumerate(perm):
            inv[p] = v
        G = self.graph.relabel(perm)
        rot = [tuple(perm[w] for w in self.rotation[inv[p]]) for p in range(self.n)]
        signs = {(min(perm[u], perm[v]), max(perm[u], perm[v])): s for (u, v), s in self.signs.items()}
        origin = [self.origin[inv[p]] for p in range(self.n)]
        return EmbeddedGraph(G, rot, signs, origin)

    # -- JSON ------------------------------------------------------------------------

    def to_json(self) -> dict:
        eid = {e: i for i, e in enumerate(self.graph.sorted_edges())}
        out = {
            "graph": self.graph.to_json(),
            "rotation": {str(v): [[w, eid[(min(v, w), max(v, w))]] for w in r] for v, r in enumerate(self.rotation)},
            "signs": {str(i): self.signs[e] for e, i in eid.items()},
        }
        if self.origin != tuple(range(self.n)):
            out["origin"] = list(self.origin)
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "EmbeddedGraph":
        G = ColouredGraph.from_json(obj["graph"])
        edges = G.sorted_edges()
        rot = [[] for _ in range(G.n)]
        for v, entries in obj["rotation"].items():
            v = int(v)
            for w, e in entries:
                if edges[int(e)] != (min(v, int(w)), max(v, int(w))):
                    raise ValueError(f"edge id {e} does not join {v} and {w}")
                rot[v].append(int(w))
        signs = {edges[int(i)]: int(s) for i, s in obj.get("signs", {}).items()}
        return cls(G, rot, signs, obj.get("origin"))


# -- flags and faces ----------------------------------------------------------------


def _dart_index(E: EmbeddedGraph) -> tuple[list, dict]:
    darts = [(v, w) for v in range(E.n) for w in E.rotation[v]]
    return darts, {d: i for i, d in enumerate(darts)}


def _face_orbits(E: EmbeddedGraph) -> list[list[tuple]]:
    """Face walks as lists of flags ``(dart, side)``, one walk per face."""
    darts, _ = _dart_index(E)
    seen = set()
    walks = []
    for d in darts:
        for eps in (-1, 1):
            f = (d, eps)
            if f in seen:
                continue
            walk = []
            g = f
            while True:
                walk.append(g)
                # a0 along the edge, then a1 at the far end
                (v, w), e = g
                e2 = -e * E.sign(v, w)
                if e2 == 1:
                    g = ((w, E.succ(w, v, 1)), -1)
                else:
                    g = ((w, E.succ(w, v, -1)), 1)
                if g == f:
                    break
            # the same face traversed the other way round uses the partner flags
            for (dd, ee) in walk:
                seen.add((dd, ee))
            for (v, w), e in walk:
                e2 = -e * E.sign(v, w)
                seen.add(((w, v), e2))
            walks.append(walk)
    return walks


def trace_faces(E: EmbeddedGraph) -> list[Face]:
    """All faces, each started at its least flag; ordered by least dart."""
    if not E.graph.is_connected():
        raise ValueError("face tracing needs a connected graph")
    if E._faces is None:
        if not E.graph.edges:
            E._faces = [Face(())] if E.n else []
        else:
            faces = []
            for walk in _face_orbits(E):
                faces.append(Face(tuple(d for d, _ in walk)))
            faces.sort(key=lambda F: min(F.darts))
            E._faces = faces
    return list(E._faces)


def num_faces(E: EmbeddedGraph) -> int:
    return len(trace_faces(E))


def embedding_euler_genus(E: EmbeddedGraph) -> int:
    return 2 - E.n + len(E.graph.edges) - num_faces(E)


def is_orientable(E: EmbeddedGraph) -> bool:
    """True iff some set of vertex flips makes every sign positive."""
    side = {0: 1}
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for w in E.graph.neighbours(v):
            want = side[v] * E.sign(v, w)
            if w not in side:
                side[w] = want
                queue.append(w)
            elif side[w] != want:
                return False
    return True


# -- constructors ------------------------------------------------------------------


def planar_embedding(G: ColouredGraph) -> EmbeddedGraph | None:
    """A genus-0 rotation system, or None if G is not planar."""
    ok, emb = nx.check_planarity(G.to_networkx())
    if not ok:
        return None
    rot = [list(emb.neighbors_cw_order(v)) if G.degree(v) else [] for v in range(G.n)]
    return EmbeddedGraph(G, rot)


def random_embedding(G: ColouredGraph, rng: random.Random, negative_prob: float = 0.0) -> EmbeddedGraph:
    rot = []
    for v in range(G.n):
        r = sorted(G.neighbours(v))
        rng.shuffle(r)
        rot.append(r)
    signs = {e: (-1 if rng.random() < negative_prob else 1) for e in G.sorted_edges()}
    return EmbeddedGraph(G, rot, signs)


def sorted_embedding(G: ColouredGraph) -> EmbeddedGraph:
    return EmbeddedGraph(G, [sorted(G.neighbours(v)) for v in range(G.n)])


# -- minimum Euler genus -------------------------------------------------------------------


class _Paths:
    """Incremental path/cycle bookkeeping on flags, with undo."""

    def __init__(self, nflags: int):
        self.end = list(range(nflags))
        self.size = [1] * nflags
        self.closed = 0
        self.closed_flags = 0

    def join(self, a: int, b: int, log: list) -> None:
        end, size = self.end, self.size
        ea, eb = end[a], end[b]
        if ea == b:
            log.append(("c", size[a]))
            self.closed += 1
            self.closed_flags += size[a]
            return
        log.append(("j", ea, end[ea], size[ea], eb, end[eb], size[eb]))
        s = size[a] + size[b]
        end[ea], end[eb] = eb, ea
        size[ea] = size[eb] = s

    def undo(self, log: list, mark: int) -> None:
        while len(log) > mark:
            rec = log.pop()
            if rec[0] == "c":
                self.closed -= 1
                self.closed_flags -= rec[1]
            else:
                _, ea, xa, sa, eb, xb, sb = rec
                self.end[eb], self.size[eb] = xb, sb
                self.end[ea], self.size[ea] = xa, sa


def _cyclic_orders(nbrs: list[int], up_to_reversal: bool) -> Iterator[tuple]:
    if len(nbrs) <= 2:
        yield tuple(nbrs)
        return
    first, rest = nbrs[0], nbrs[1:]
    for p in itertools.permutations(rest):
        if up_to_reversal and p > tuple(reversed(p)):
            continue
        yield (first,) + p


class _GenusSearch:
    def __init__(self, G: ColouredGraph, node_budget: int | None, deadline: float | None):
        self.G = G
        self.budget = node_budget
        self.deadline = deadline
        self.nodes = 0
        n = G.n
        # BFS order and tree
        self.order = []
        parent = {0: None}
        q = deque([0])
        while q:
            v = q.popleft()
            self.order.append(v)
            for w in sorted(G.neighbours(v)):
                if w not in parent:
                    parent[w] = v
                    q.append(w)
        self.tree = {(min(v, p), max(v, p)) for v, p in parent.items() if p is not None}
        self.index = {v: i for i, v in enumerate(self.order)}
        darts = [(v, w) for v in range(n) for w in sorted(G.neighbours(v))]
        self.did = {d: i for i, d in enumerate(darts)}
        self.nflags = 2 * len(darts)
        # for each vertex, the non-tree edges to earlier vertices in the order
        self.back = {
            v: [w for w in sorted(G.neighbours(v)) if self.index[w] < self.index[v] and (min(v, w), max(v, w)) not in self.tree]
            for v in self.order
        }

    def flag(self, d, eps):
        return 2 * self.did[d] + (1 if eps == 1 else 0)

    def _add_edge(self, P, v, w, s, log):
        # a0: (d, e) <-> (rev d, -e*s) for e = +1 and e = -1
        d, r = (v, w), (w, v)
        P.join(self.flag(d, 1), self.flag(r, -s), log)
        P.join(self.flag(d, -1), self.flag(r, s), log)

    def _add_rotation(self, P, v, rot, log):
        k = len(rot)
        for i in range(k):
            P.join(self.flag((v, rot[i]), 1), self.flag((v, rot[(i + 1) % k]), -1), log)

    def find(self, target_faces: int):
        """A rotation system and signs with at least ``target_faces`` faces, or None."""
        P = _Paths(self.nflags)
        log: list = []
        for (u, v) in self.tree:
            self._add_edge(P, u, v, 1, log)
        rot: dict = {}
        signs: dict = {}

        def bound_ok():
            return P.closed + (self.nflags - P.closed_flags) // 6 >= target_faces

        def dfs(i):
            self.nodes += 1
            if self.budget is not None and self.nodes > self.budget:
                raise _OutOfBudget
            if self.deadline is not None and self.nodes % 1024 == 0 and time.monotonic() > self.deadline:
                raise _OutOfBudget
            if i == len(self.order):
                return P.closed >= target_faces
            v = self.order[i]
            for r in _cyclic_orders(sorted(self.G.neighbours(v)), up_to_reversal=(i == 0)):
                mark = len(log)
                self._add_rotation(P, v, r, log)
                if bound_ok():
                    rot[v] = r
                    back = self.back[v]
                    for ss in itertools.product((1, -1), repeat=len(back)):
                        mark2 = len(log)
                        for w, s in zip(back, ss):
                            self._add_edge(P, v, w, s, log)
                        if bound_ok() and dfs(i + 1):
                            for w, s in zip(back, ss):
                                signs[(min(v, w), max(v, w))] = s
                            return True
                        P.undo(log, mark2)
                P.undo(log, mark)
            return False

        if dfs(0):
            return EmbeddedGraph(self.G, [rot[v] for v in range(self.G.n)], signs)
        return None


class _OutOfBudget(Exception):
    pass


def _girth(G: ColouredGraph) -> int | None:
    best = None
    for s in range(G.n):
        dist = {s: 0}
        par = {s: None}
        q = deque([s])
        while q:
            v = q.popleft()
            for w in G.neighbours(v):
                if w not in dist:
                    dist[w] = dist[v] + 1
                    par[w] = v
                    q.append(w)
                elif par[v] != w:
                    L = dist[v] + dist[w] + 1
                    if best is None or L < best:
                        best = L
    return best


def genus_lower_bound(G: ColouredGraph) -> int:
    girth = _girth(G)
    if girth is None:
        return 0
    m = len(G.edges)
    return max(0, 2 - G.n + m - (2 * m) // girth)


def minimum_genus_embedding(G: ColouredGraph, budget: int | None = 2_000_000, time_limit: float | None = None) -> EmbeddedGraph:
    """An embedding of least Euler genus (exhaustive, iterative deepening)."""
    if G.n == 0 or not G.is_connected():
        raise ValueError("genus search needs a nonempty connected graph")
    planar = planar_embedding(G)
    if planar is not None:
        return planar
    best = sorted_embedding(G)
    ub = embedding_euler_genus(best)
    lb = max(genus_lower_bound(G), 1)
    deadline = None if time_limit is None else time.monotonic() + time_limit
    search = _GenusSearch(G, budget, deadline)
    for g in range(lb, ub):
        try:
            E = search.find(2 - G.n + len(G.edges) - g)
        except _OutOfBudget:
            raise GenusBudgetExceeded(g, ub, best) from None
        if E is not None:
            assert embedding_euler_genus(E) <= g
            return E
    return best


def euler_genus_at_most(G: ColouredGraph, h: int, budget: int | None = 2_000_000, time_limit: float | None = None) -> bool:
    """Does the connected graph G embed in a surface of Euler genus at most h?

    One bounded search for an embedding with enough faces, which is much
    cheaper than pinning down the exact genus when h is small.
    """
    if G.n == 0 or not G.is_connected():
        raise ValueError("genus search needs a nonempty connected graph")
    if planar_embedding(G) is not None:
        return True
    if h <= 0 or genus_lower_bound(G) > h:
        return False
    fallback = sorted_embedding(G)
    ub = embedding_euler_genus(fallback)
    if ub <= h:
        return True
    deadline = None if time_limit is None else time.monotonic() + time_limit
    try:
        return _GenusSearch(G, budget, deadline).find(2 - G.n + len(G.edges) - h) is not None
    except _OutOfBudget:
        raise GenusBudgetExceeded(genus_lower_bound(G), ub, fallback) from None


def graph_euler_genus(G: ColouredGraph, budget: int | None = 2_000_000, time_limit: float | None = None) -> int:
    """Least Euler genus of a surface G embeds in; raises GenusBudgetExceeded when the search gives up."""
    return embedding_euler_genus(minimum_genus_embedding(G, budget, time_limit))


# -- cycles ----------------------------------------------------------------------------


def check_cycle(G: ColouredGraph, C: Sequence[int]) -> tuple:
    C = tuple(C)
    if len(C) < 3 or len(set(C)) != len(C):
        raise NotACycleError(f"{C} is not a cycle")
    for i, v in enumerate(C):
        if not 0 <= v < G.n or not G.adjacent(v, C[(i + 1) % len(C)]):
            raise NotACycleError(f"{C} is not a cycle of the graph")
    return C


def canonical_cycle(C: Sequence[int]) -> tuple:
    """Rotate to start at the least vertex, oriented so the second entry is the smaller neighbour."""
    C = tuple(C)
    i = C.index(min(C))
    C = C[i:] + C[:i]
    if len(C) > 2 and C[-1] < C[1]:
        C = (C[0],) + tuple(reversed(C[1:]))
    return C


def cycles_of_length(G: ColouredGraph, L: int) -> list[tuple]:
    """All cycles with L vertices in canonical form, sorted by vertex set then sequence."""
    out = []
    adj = [sorted(G.neighbours(v)) for v in range(G.n)]

    def extend(path, onpath):
        v = path[-1]
        if len(path) == L:
            if G.adjacent(v, path[0]) and path[1] < path[-1]:
                out.append(tuple(path))
            return
        for w in adj[v]:
            if w > path[0] and w not in onpath:
                onpath.add(w)
                path.append(w)
                extend(path, onpath)
                path.pop()
                onpath.discard(w)

    for s in range(G.n):
        extend([s], {s})
    out.sort(key=lambda c: (sorted(c), c))
    return out


def enumerate_cycles(G: ColouredGraph, max_length: int | None = None) -> Iterator[tuple]:
    top = G.n if max_length is None else min(max_length, G.n)
    for L in range(3, top + 1):
        yield from cycles_of_length(G, L)


# -- cutting -----------------------------------------------------------------------------


def cut_along_cycle(E: EmbeddedGraph, C: Sequence[int]) -> list[EmbeddedGraph]:
    """Cut the surface along C and glue a disk into each new boundary.

    Each cycle vertex splits into a left and a right copy, taking the part of
    its rotation on that side of the cycle. The result has one piece if C is
    non-separating and two otherwise; pieces keep ``origin`` pointers into
    the graph ``E`` came from.
    """
    G = E.graph
    C = check_cycle(G, C)
    L = len(C)
    # normalise so every cycle edge except the closing one is positive
    F = E
    for i in range(1, L):
        if F.sign(C[i - 1], C[i]) == -1:
            F = F.flip(C[i])
    closing = F.sign(C[-1], C[0])
    pos = {v: i for i, v in enumerate(C)}

    # side of each dart leaving a cycle vertex: 0 = left (between next and prev going forward), 1 = right
    side: dict = {}
    for i, v in enumerate(C):
        nxt, prv = C[(i + 1) % L], C[i - 1]
        r = F.rotation[v]
        j = F._pos[v][nxt]
        s = 0
        for t in range(1, len(r)):
            w = r[(j + t) % len(r)]
            if w == prv:
                s = 1
                continue
            side[(v, w)] = s

    # vertex ids in the cut graph: (v, copy) with copy 0 for non-cycle vertices
    ids: dict = {}
    for v in range(G.n):
        if v in pos:
            ids[(v, 0)] = len(ids)
            ids[(v, 1)] = len(ids)
        else:
            ids[(v, 0)] = len(ids)

    def copy_of(v, w):
        """Which copy of v carries the dart (v, w)."""
        if v not in pos:
            return ids[(v, 0)]
        return ids[(v, side[(v, w)])] if (v, w) in side else None

    edges: dict = {}
    # ordinary edges and chords
    for (a, b) in G.sorted_edges():
        if a in pos and b in pos and (C[(pos[a] + 1) % L] == b or C[(pos[b] + 1) % L] == a):
            continue
        edges[(copy_of(a, b), copy_of(b, a))] = F.sign(a, b)
    # the two copies of each cycle edge
    cyc_pair: dict = {}
    for i in range(L):
        a, b = C[i], C[(i + 1) % L]
        for s in (0, 1):
            if i == L - 1 and closing == -1:
                x, y = ids[(a, s)], ids[(b, 1 - s)]
            else:
                x, y = ids[(a, s)], ids[(b, s)]
            edges[(x, y)] = F.sign(a, b)
            cyc_pair[(a, b, s)] = y
            cyc_pair[(b, a, s if not (i == L - 1 and closing == -1) else 1 - s)] = x

    N = len(ids)
    rot: list = [None] * N
    for v in range(G.n):
        r = F.rotation[v]
        if v not in pos:
            rot[ids[(v, 0)]] = [copy_of(w, v) for w in r]
            continue
        i = pos[v]
        nxt, prv = C[(i + 1) % L], C[i - 1]
        j = F._pos[v][nxt]
        seq = [r[(j + t) % len(r)] for t in range(len(r))]
        k = seq.index(prv)
        left = seq[: k + 1]  # next, ..., prev
        right = seq[k:] + [nxt]  # prev, ..., next
        for s, part in ((0, left), (1, right)):
            out = []
            for w in part:
                if w == nxt:
                    out.append(cyc_pair[(v, nxt, s)])
                elif w == prv:
                    out.append(cyc_pair[(v, prv, s)])
                else:
                    out.append(copy_of(w, v))
            rot[ids[(v, s)]] = out

    origin_of = [0] * N
    for (v, _), x in ids.items():
        origin_of[x] = E.origin[v]
    whole = ColouredGraph(N, edges.keys())
    pieces = []
    for comp in connected_components(whole):
        keep = sorted(comp)
        new = {x: i for i, x in enumerate(keep)}
        sub_edges = [(new[a], new[b]) for (a, b) in edges if a in new]
        vc = []
        inv_ids = {x: v for (v, _), x in ids.items()}
        for x in keep:
            vc.append(G.vertex_colours[inv_ids[x]])
        arc = {}
        for (a, b) in edges:
            if a in new:
                oa, ob = inv_ids[a], inv_ids[b]
                arc[(new[a], new[b])] = G.chi(oa, ob)
                arc[(new[b], new[a])] = G.chi(ob, oa)
        H = ColouredGraph(len(keep), sub_edges, vc, arc)
        signs = {(min(new[a], new[b]), max(new[a], new[b])): s for (a, b), s in edges.items() if a in new}
        pieces.append(EmbeddedGraph(H, [[new[w] for w in rot[x]] for x in keep], signs, [origin_of[x] for x in keep]))
    return pieces


def is_contractible(E: EmbeddedGraph, C: Sequence[int]) -> bool:
    """Does C bound a closed disk? Cutting must separate off a genus-0 piece."""
    pieces = cut_along_cycle(E, C)
    return len(pieces) == 2 and any(embedding_euler_genus(P) == 0 for P in pieces)


def disk_side(E: EmbeddedGraph, C: Sequence[int]) -> EmbeddedGraph | None:
    """The genus-0 piece bounded by C, or None if C is not contractible.

    When both pieces are spheres the one with fewer vertices is returned,
    ties broken by the sorted origin list.
    """
    pieces = cut_along_cycle(E, C)
    if len(pieces) != 2:
        return None
    disks = [P for P in pieces if embedding_euler_genus(P) == 0]
    if not disks:
        return None
    return min(disks, key=lambda P: (P.n, sorted(P.origin)))


def shortest_noncontractible_cycle(E: EmbeddedGraph) -> tuple | None:
    """A shortest cycle that does not bound a disk; ties by sorted vertex list."""
    if not E.graph.is_connected():
        raise ValueError("needs a connected graph")
    if embedding_euler_genus(E) == 0:
        return None
    for L in range(3, E.n + 1):
        for C in cycles_of_length(E.graph, L):
            if not is_contractible(E, C):
                return C
    return None


def noncontractible_cycles(E: EmbeddedGraph, max_length: int | None = None) -> Iterable[tuple]:
    if embedding_euler_genus(E) == 0:
        return
    for C in enumerate_cycles(E.graph, max_length):
        if not is_contractible(E, C):
            yield C
