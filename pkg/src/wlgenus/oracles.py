"""Brute-force ground truth: isomorphism, automorphism orbits, small-graph enumeration.

Isomorphism is decided by individualisation-refinement: colour refinement on
the pair, then branching on the smallest non-singleton cell. The search is
exhaustive, so a ``None`` answer is a proof of non-isomorphism.
"""

from __future__ import annotations

import random
from collections import Counter
from functools import lru_cache
from typing import Iterator

from wlgenus.graph import ColouredGraph, connected_components


class OracleLimitError(RuntimeError):
    """Instance exceeds the oracle's size or node budget."""


def _arc_code(G: ColouredGraph, table: dict):
    if G.is_uniformly_arc_coloured():
        return None
    return {a: table.setdefault(("arc", G.chi(*a)), len(table)) for a in G.arcs()}


def _refine_pair(G, H, cg, ch, arcs):
    """Joint colour refinement of two vertex colourings; returns the stable pair."""
    ag, ah = arcs
    while True:
        table: dict = {}

        def step(X, c, arc):
            out = []
            for u in range(X.n):
                if arc is None:
                    nb = tuple(sorted(c[v] for v in X.neighbours(u)))
                else:
                    nb = tuple(sorted((arc[(u, v)], arc[(v, u)], c[v]) for v in X.neighbours(u)))
                out.append(table.setdefault((c[u], nb), len(table)))
            return out

        ng, nh = step(G, cg, ag), step(H, ch, ah)
        if len(table) == len(set(cg) | set(ch)):
            return cg, ch
        cg, ch = ng, nh


def _verify(G: ColouredGraph, H: ColouredGraph, f: list[int]) -> bool:
    if sorted(f) != list(range(H.n)):
        return False
    for v in range(G.n):
        if G.vertex_colours[v] != H.vertex_colours[f[v]]:
            return False
    if len(G.edges) != len(H.edges):
        return False
    for u, v in G.edges:
        if not H.adjacent(f[u], f[v]):
            return False
        if G.chi(u, v) != H.chi(f[u], f[v]) or G.chi(v, u) != H.chi(f[v], f[u]):
            return False
    return True


class _Search:
    def __init__(self, G, H, node_budget, rng=None):
        self.G, self.H = G, H
        self.budget = node_budget
        self.nodes = 0
        self.rng = rng
        table: dict = {}
        self.arcs = (_arc_code(G, table), _arc_code(H, table))
        vt: dict = {}
        self.cg = [vt.setdefault(c, len(vt)) for c in G.vertex_colours]
        self.ch = [vt.setdefault(c, len(vt)) for c in H.vertex_colours]

    def run(self, cg=None, ch=None):
        cg = self.cg if cg is None else cg
        ch = self.ch if ch is None else ch
        self.nodes += 1
        if self.budget is not None and self.nodes > self.budget:
            raise OracleLimitError("isomorphism search exceeded its node budget")
        cg, ch = _refine_pair(self.G, self.H, cg, ch, self.arcs)
        if Counter(cg) != Counter(ch):
            return None
        cells: dict = {}
        for v, c in enumerate(cg):
            cells.setdefault(c, []).append(v)
        if len(cells) == self.G.n:
            where = {c: w for w, c in enumerate(ch)}
            f = [where[c] for c in cg]
            return f if _verify(self.G, self.H, f) else None
        c = min((len(vs), c) for c, vs in cells.items() if len(vs) > 1)[1]
        v = cells[c][0]
        targets = [w for w in range(self.H.n) if ch[w] == c]
        if self.rng is not None:
            self.rng.shuffle(targets)
        fresh = max(max(cg), max(ch)) + 1
        for w in targets:
            cg2, ch2 = list(cg), list(ch)
            cg2[v] = fresh
            ch2[w] = fresh
            f = self.run(cg2, ch2)
            if f is not None:
                return f
        return None


def find_isomorphism(
    G: ColouredGraph, H: ColouredGraph, max_order: int = 12, node_budget: int | None = None, pin=None
) -> list[int] | None:
    """A colour-preserving isomorphism G -> H as a list, or None.

    ``pin`` is an optional pair of equal-length vertex lists that must map onto
    each other in order.
    """
    if max(G.n, H.n) > max_order:
        raise OracleLimitError(f"order {max(G.n, H.n)} exceeds oracle bound {max_order}")
    if G.n != H.n or len(G.edges) != len(H.edges):
        return None
    s = _Search(G, H, node_budget)
    cg, ch = s.cg, s.ch
    if pin is not None:
        a, b = pin
        if len(a) != len(b):
            raise ValueError("pin lists differ in length")
        cg, ch = list(cg), list(ch)
        top = max(cg + ch) + 1
        for i, (x, y) in enumerate(zip(a, b)):
            if cg[x] != ch[y]:
                return None
            cg[x] = ch[y] = top + i
    return s.run(cg, ch)


def brute_force_isomorphic(G: ColouredGraph, H: ColouredGraph, max_order: int = 12, node_budget: int | None = None) -> bool:
    return find_isomorphism(G, H, max_order, node_budget) is not None


def automorphism_orbits(G: ColouredGraph, max_order: int = 12) -> list[list[int]]:
    """Orbit partition of Aut(G), each orbit sorted, ordered by least element."""
    if G.n > max_order:
        raise OracleLimitError(f"order {G.n} exceeds oracle bound {max_order}")
    parent = list(range(G.n))

    def root(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for v in range(G.n):
        for w in range(v + 1, G.n):
            if root(v) == root(w):
                continue
            f = find_isomorphism(G, G, max_order, pin=([v], [w]))
            if f is not None:
                # every cycle of f lies in one orbit
                for x in range(G.n):
                    a, b = root(x), root(f[x])
                    if a != b:
                        parent[max(a, b)] = min(a, b)
    orbits: dict = {}
    for v in range(G.n):
        orbits.setdefault(root(v), []).append(v)
    return sorted(orbits.values())


def random_automorphism(G: ColouredGraph, rng: random.Random, max_order: int = 12) -> list[int]:
    if G.n > max_order:
        raise OracleLimitError(f"order {G.n} exceeds oracle bound {max_order}")
    s = _Search(G, G, None, rng)
    f = s.run()
    assert f is not None
    return f


def _invariant(G: ColouredGraph, table: dict) -> tuple:
    """Cheap isomorphism invariant: edge count plus the 1-WL round histograms."""
    from wlgenus.wl import ColourTable, colour_refinement

    ct = table.setdefault("table", ColourTable())
    hist = tuple(tuple(sorted(Counter(r).items())) for r in colour_refinement(G, ct))
    return (G.n, len(G.edges), hist)


class IsoClassSet:
    """Set of graphs up to isomorphism, bucketed by an invariant."""

    def __init__(self, max_order: int = 12):
        self.buckets: dict = {}
        self.graphs: list[ColouredGraph] = []
        self._table: dict = {}
        self.max_order = max_order

    def add(self, G: ColouredGraph) -> bool:
        key = _invariant(G, self._table)
        bucket = self.buckets.setdefault(key, [])
        for H in bucket:
            if brute_force_isomorphic(G, H, self.max_order):
                return False
        bucket.append(G)
        self.graphs.append(G)
        return True

    def __len__(self):
        return len(self.graphs)


@lru_cache(maxsize=None)
def _all_graphs(n: int) -> tuple[ColouredGraph, ...]:
    if n == 1:
        return (ColouredGraph(1),)
    seen = IsoClassSet()
    for G in _all_graphs(n - 1):
        for mask in range(1 << (n - 1)):
            new = [(v, n - 1) for v in range(n - 1) if mask >> v & 1]
            seen.add(ColouredGraph(n, list(G.edges) + new))
    return tuple(seen.graphs)


def enumerate_graphs(n: int, connected_only: bool = False) -> Iterator[ColouredGraph]:
    """One representative per isomorphism class of (connected) graphs of order n."""
    if n < 1:
        raise ValueError("n must be positive")
    if n > 8:
        raise OracleLimitError("enumeration is limited to n <= 8")
    for G in _all_graphs(n):
        if not connected_only or len(connected_components(G)) == 1:
            yield G


@lru_cache(maxsize=None)
def _all_trees(n: int) -> tuple[ColouredGraph, ...]:
    if n == 1:
        return (ColouredGraph(1),)
    seen = IsoClassSet(max_order=64)
    for T in _all_trees(n - 1):
        for v in range(n - 1):
            seen.add(ColouredGraph(n, list(T.edges) + [(v, n - 1)]))
    return tuple(seen.graphs)


def enumerate_trees(n: int) -> Iterator[ColouredGraph]:
    if n < 1:
        raise ValueError("n must be positive")
    if n > 14:
        raise OracleLimitError("tree enumeration is limited to n <= 14")
    yield from _all_trees(n)
