"""The k-dimensional Weisfeiler-Leman refinement on V(G)^k.

Colours are integers handed out by a :class:`ColourTable`. The table interns
the exact structural signature of every colour (previous colour plus the
multiset of neighbour tuples), so two tuples carry the same id exactly when
their refinement histories agree. Graphs refined with the same table are
refined jointly: ids are comparable between them.

The round kernel is vectorised with numpy; for each round it only reads the
previous colouring and writes a new array.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import product
from typing import NamedTuple, Sequence

import numpy as np

from wlgenus.graph import ColouredGraph, individualise


class AtomType(NamedTuple):
    k: int
    pattern: tuple  # first position holding the same vertex, per position
    adjacency: tuple  # adjacency bit for each position pair i < j
    colours: tuple  # chi(u_i, u_j) for all ordered pairs, None on non-arcs


def atomic_type(G: ColouredGraph, tup: Sequence[int]) -> AtomType:
    if len(tup) == 0:
        raise ValueError("atomic type of the empty tuple")
    for v in tup:
        if not 0 <= v < G.n:
            raise ValueError(f"vertex {v} not in graph")
    k = len(tup)
    pattern = tuple(tup.index(v) for v in tup)
    adjacency = tuple(G.adjacent(tup[i], tup[j]) for i in range(k) for j in range(i + 1, k))
    colours = tuple(
        G.chi(tup[i], tup[j]) if tup[i] == tup[j] or G.adjacent(tup[i], tup[j]) else None
        for i in range(k)
        for j in range(k)
    )
    return AtomType(k, pattern, adjacency, colours)


class ColourTable:
    """Injective interning of colour signatures to small integers."""

    def __init__(self):
        self._ids: dict = {}

    def __len__(self):
        return len(self._ids)

    def intern(self, key) -> int:
        i = self._ids.get(key)
        if i is None:
            i = len(self._ids)
            self._ids[key] = i
        return i

    def intern_rows(self, tag, rows: np.ndarray) -> np.ndarray:
        """Intern each distinct row of a 2-D int array; returns ids per row."""
        if rows.shape[0] == 0:
            return np.zeros(0, dtype=np.int64)
        codes, first = _row_codes(rows)
        ids = np.fromiter(
            (self.intern((tag, tuple(rows[i].tolist()))) for i in first),
            dtype=np.int64,
            count=len(first),
        )
        return ids[codes]


def _compress(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    key = a * (int(b.max()) + 1) + b
    return np.unique(key, return_inverse=True)[1].reshape(-1)


def _row_codes(rows: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Local code per row (equal rows, equal codes) and one index per code."""
    code = np.unique(rows[:, 0], return_inverse=True)[1].reshape(-1)
    for j in range(1, rows.shape[1]):
        code = _compress(code, np.unique(rows[:, j], return_inverse=True)[1].reshape(-1))
    _, first, inv = np.unique(code, return_index=True, return_inverse=True)
    return inv.reshape(-1), first


def _vertex_codes(G: ColouredGraph, table: ColourTable) -> np.ndarray:
    return np.array([table.intern(("vc", c)) for c in G.vertex_colours], dtype=np.int64)


def _relation_codes(G: ColouredGraph, table: ColourTable) -> np.ndarray:
    """R[u, v] encodes equality, adjacency and both arc colours of the pair."""
    n = G.n
    eq = table.intern(("rel", "eq"))
    non = table.intern(("rel", "non"))
    R = np.full((n, n), non, dtype=np.int64)
    np.fill_diagonal(R, eq)
    for u, v in G.edges:
        a, b = G.chi(u, v), G.chi(v, u)
        R[u, v] = table.intern(("rel", "adj", a, b))
        R[v, u] = table.intern(("rel", "adj", b, a))
    return R


def _broadcast_axes(arr: np.ndarray, axes: Sequence[int], ndim: int) -> np.ndarray:
    shape = [1] * ndim
    for ax, size in zip(axes, arr.shape):
        shape[ax] = size
    return arr.reshape(shape)


def _initial_colouring(G: ColouredGraph, k: int, table: ColourTable) -> np.ndarray:
    n = G.n
    vcode = _vertex_codes(G, table)
    R = _relation_codes(G, table)
    full = (n,) * k
    cols = [np.broadcast_to(_broadcast_axes(vcode, [i], k), full).reshape(-1) for i in range(k)]
    for i in range(k):
        for j in range(i + 1, k):
            cols.append(np.broadcast_to(_broadcast_axes(R, [i, j], k), full).reshape(-1))
    rows = np.stack(cols, axis=1)
    return table.intern_rows(("atp", k), rows).reshape(full)


def _refine_round(G: ColouredGraph, C: np.ndarray, table: ColourTable, vcode, R) -> np.ndarray:
    k = C.ndim
    n = G.n
    full = (n,) * (k + 1)
    cols = [np.broadcast_to(_broadcast_axes(vcode, [k], k + 1), full)]
    for i in range(k):
        cols.append(np.broadcast_to(_broadcast_axes(R, [i, k], k + 1), full))
    # substituted tuples: last position first, first position last
    for j in reversed(range(k)):
        moved = np.expand_dims(np.moveaxis(C, j, -1), j)
        cols.append(np.broadcast_to(moved, full))
    rows = np.stack([c.reshape(-1) for c in cols], axis=1)
    elem = table.intern_rows("elem", rows).reshape(n**k, n)
    elem.sort(axis=1)
    sig = np.concatenate([C.reshape(-1, 1), elem], axis=1)
    return table.intern_rows("col", sig).reshape(C.shape)


def _histogram(C: np.ndarray) -> tuple:
    ids, counts = np.unique(C, return_counts=True)
    return tuple(zip(ids.tolist(), counts.tolist()))


@dataclass
class StableColouring:
    k: int
    colouring: np.ndarray
    rounds: int
    history: list | None = None
    table: ColourTable | None = field(default=None, repr=False)

    def colour(self, tup: Sequence[int]) -> int:
        return int(self.colouring[tuple(tup)])

    def histogram(self) -> dict[int, int]:
        return dict(_histogram(self.colouring))

    def vertex_colours(self) -> list[int]:
        n = self.colouring.shape[0]
        return [int(self.colouring[(v,) * self.k]) for v in range(n)]

    def num_classes(self) -> int:
        return int(np.unique(self.colouring).size)

    def to_json(self) -> dict:
        flat = self.colouring.reshape(-1)
        ids, first, counts = np.unique(flat, return_index=True, return_counts=True)
        shape = self.colouring.shape
        classes = [
            {"colour": int(c), "count": int(m), "representative": [int(x) for x in np.unravel_index(int(i), shape)]}
            for c, i, m in zip(ids, first, counts)
        ]
        return {"k": self.k, "classes": classes, "rounds": self.rounds}


def refine_jointly(
    graphs: Sequence[ColouredGraph], k: int, table: ColourTable | None = None, audit: bool = False
) -> list[StableColouring]:
    """Refine several graphs in lockstep over one colour table.

    Stops at the first round whose colouring induces the same partition of
    the disjoint union of all tuple sets as the next round would.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if any(G.n < 1 for G in graphs):
        raise ValueError("graphs must be nonempty")
    table = table if table is not None else ColourTable()
    aux = [(_vertex_codes(G, table), _relation_codes(G, table)) for G in graphs]
    cur = [_initial_colouring(G, k, table) for G in graphs]
    hist = [[c] for c in cur] if audit else None
    rounds = 0
    while True:
        nxt = [_refine_round(G, C, table, vc, R) for G, C, (vc, R) in zip(graphs, cur, aux)]
        before = len(set().union(*(np.unique(c).tolist() for c in cur)))
        after = len(set().union(*(np.unique(c).tolist() for c in nxt)))
        if after == before:
            break
        cur = nxt
        rounds += 1
        if hist is not None:
            for h, c in zip(hist, cur):
                h.append(c)
    return [
        StableColouring(k, c, rounds, None if hist is None else h, table)
        for c, h in zip(cur, hist if hist is not None else [None] * len(cur))
    ]


def wl_refine(G: ColouredGraph, k: int, audit: bool = False, table: ColourTable | None = None) -> StableColouring:
    return refine_jointly([G], k, table, audit)[0]


def wl_fingerprint(G: ColouredGraph, k: int, table: ColourTable) -> tuple:
    """Per-round colour histograms of G up to and including the confirming round.

    Two graphs fingerprinted with the same table are distinguished by k-WL
    exactly when their fingerprints differ.
    """
    vc, R = _vertex_codes(G, table), _relation_codes(G, table)
    C = _initial_colouring(G, k, table)
    out = [_histogram(C)]
    while True:
        N = _refine_round(G, C, table, vc, R)
        out.append(_histogram(N))
        if len(out[-1]) == len(out[-2]):
            return tuple(out)
        C = N


def colour_refinement(G: ColouredGraph, table: ColourTable | None = None) -> list[list[int]]:
    """Sparse 1-WL: per-round vertex colourings up to the stable round.

    Equivalent to the generic kernel for k = 1: the multiset over all v of
    (atp(u, v), C(v)) is recovered from the neighbour multiset, C(u) and the
    colour histogram of the graph.
    """
    table = table if table is not None else ColourTable()
    n = G.n
    vc = [table.intern(("vc", c)) for c in G.vertex_colours]
    cur = [table.intern(("cr0", c)) for c in vc]
    history = [cur]
    while True:
        h = table.intern(("crhist", tuple(sorted(Counter(cur).items()))))
        nxt = []
        for u in range(n):
            nb = sorted(
                (G.chi(u, v), G.chi(v, u), vc[v], cur[v]) for v in G.neighbours(u)
            ) if G.arc_colours else sorted((vc[v], cur[v]) for v in G.neighbours(u))
            nxt.append(table.intern(("cr", cur[u], h, tuple(nb))))
        if len(set(nxt)) == len(set(cur)):
            return history
        cur = nxt
        history.append(cur)


def _partition(labels) -> frozenset:
    blocks: dict = {}
    for i, c in enumerate(labels):
        blocks.setdefault(c, []).append(i)
    return frozenset(frozenset(b) for b in blocks.values())


def distinguishes(G: ColouredGraph, H: ColouredGraph, k: int) -> bool:
    if G.n != H.n:
        return True
    a, b = refine_jointly([G, H], k)
    return a.histogram() != b.histogram()


def identifies_within(G: ColouredGraph, k: int, family: Sequence[ColouredGraph], iso=None) -> bool:
    """Does k-WL distinguish G from every member of ``family`` not isomorphic to it?

    ``iso`` decides isomorphism; it defaults to the brute-force oracle.
    """
    if iso is None:
        from wlgenus.oracles import brute_force_isomorphic as iso
    table = ColourTable()
    fp = wl_fingerprint(G, k, table)
    for H in family:
        if H.n == G.n and wl_fingerprint(H, k, table) == fp and not iso(G, H):
            return False
    return True


def wl_dimension_within(G: ColouredGraph, family: Sequence[ColouredGraph], k_max: int, iso=None) -> int | None:
    """Least k <= k_max for which k-WL identifies G within ``family``; None if there is none."""
    if k_max < 1:
        raise ValueError("k_max must be at least 1")
    for k in range(1, k_max + 1):
        if identifies_within(G, k, family, iso):
            return k
    return None


def determines_orbits_check(G: ColouredGraph, k: int, max_order: int = 12) -> bool:
    """Do the k-WL vertex classes coincide with the automorphism orbits of G?"""
    from wlgenus.oracles import automorphism_orbits

    orbits = automorphism_orbits(G, max_order=max_order)
    classes = _partition(wl_refine(G, k).vertex_colours())
    return classes == frozenset(frozenset(o) for o in orbits)


def individualised_versions(G: ColouredGraph) -> list[ColouredGraph]:
    return [individualise(G, [v]) for v in range(G.n)]


def all_tuples(n: int, k: int):
    return product(range(n), repeat=k)
