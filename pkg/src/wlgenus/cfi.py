"""Cai-Fürer-Immerman gadget pairs.

Each base vertex v of degree d is replaced by 2^(d-1) middle vertices, one per
even-size subset S of the edges at v, and d pairs of outer vertices
``a(v, e, 0)``, ``a(v, e, 1)``.  The middle vertex for S is adjacent to
``a(v, e, 1)`` when e is in S and to ``a(v, e, 0)`` otherwise.  For a base
edge e = vw the outer pairs are joined straight across (``a(v,e,i)`` to
``a(w,e,i)``), except on the twist edge where they are crossed.

Vertices are coloured by origin: ``"mid:v"`` for middle vertices and
``"out:v:w"`` for the outer pair of v facing w.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from wlgenus.graph import ColouredGraph
from wlgenus.oracles import OracleLimitError, brute_force_isomorphic
from wlgenus.wl import distinguishes


class CFIError(ValueError):
    """The base graph is unsuitable (disconnected, or a vertex of degree below 2)."""


@dataclass(frozen=True)
class CFIPair:
    base: ColouredGraph
    untwisted: ColouredGraph
    twisted: ColouredGraph
    twist_edge: tuple[int, int]
    # vertex id -> ("mid", v, subset) or ("out", v, w, bit)
    labels: tuple

    @property
    def size(self) -> int:
        return self.untwisted.n

    @property
    def base_is_cycle(self) -> bool:
        """True when every base vertex has degree 2; such pairs are told apart already by 2-WL."""
        return all(self.base.degree(v) == 2 for v in self.base.vertices)

    def to_json(self) -> dict:
        return {
            "base": self.base.to_json(),
            "twist_edge": list(self.twist_edge),
            "size": self.size,
            "untwisted": self.untwisted.to_json(),
            "twisted": self.twisted.to_json(),
        }


def expected_size(base: ColouredGraph) -> int:
    return sum(2 ** (base.degree(v) - 1) + 2 * base.degree(v) for v in base.vertices)


def _gadget_layout(base: ColouredGraph):
    labels: list[tuple] = []
    index: dict[tuple, int] = {}

    def add(label):
        index[label] = len(labels)
        labels.append(label)

    for v in base.vertices:
        nbrs = sorted(base.neighbours(v))
        for size in range(0, len(nbrs) + 1, 2):
            for S in combinations(nbrs, size):
                add(("mid", v, S))
        for w in nbrs:
            add(("out", v, w, 0))
            add(("out", v, w, 1))
    return labels, index


def _build(base: ColouredGraph, labels, index, twist) -> ColouredGraph:
    edges = []
    for lab in labels:
        if lab[0] != "mid":
            continue
        _, v, S = lab
        for w in base.neighbours(v):
            edges.append((index[lab], index[("out", v, w, int(w in S))]))
    for v, w in base.sorted_edges():
        flip = int((v, w) == twist)
        for i in (0, 1):
            edges.append((index[("out", v, w, i)], index[("out", w, v, i ^ flip)]))
    colours = [f"mid:{lab[1]}" if lab[0] == "mid" else f"out:{lab[1]}:{lab[2]}" for lab in labels]
    return ColouredGraph(len(labels), edges, vertex_colours=colours)


def cfi_pair(base: ColouredGraph) -> CFIPair:
    """The untwisted and twisted CFI graphs over ``base``; the twist sits on the least edge."""
    if base.n == 0 or not base.is_connected():
        raise CFIError("base graph must be connected and non-empty")
    low = [v for v in base.vertices if base.degree(v) < 2]
    if low:
        raise CFIError(f"base vertices of degree < 2: {low}")
    labels, index = _gadget_layout(base)
    twist = base.sorted_edges()[0]
    return CFIPair(
        base=base,
        untwisted=_build(base, labels, index, None),
        twisted=_build(base, labels, index, twist),
        twist_edge=twist,
        labels=tuple(labels),
    )


def twist_absorbable(pair: CFIPair, max_order: int = 64, node_budget: int | None = 200_000) -> bool | None:
    """Whether the two outputs are isomorphic, by the brute-force oracle.

    Returns None if the oracle gives up on its budget.
    """
    try:
        return brute_force_isomorphic(pair.untwisted, pair.twisted, max_order, node_budget)
    except OracleLimitError:
        return None


def cfi_threshold(pair: CFIPair, k_max: int) -> int | None:
    """Least k <= k_max at which k-WL tells the two outputs apart, or None."""
    if k_max < 1:
        raise ValueError("k_max must be at least 1")
    for k in range(1, k_max + 1):
        if distinguishes(pair.untwisted, pair.twisted, k):
            return k
    return None
