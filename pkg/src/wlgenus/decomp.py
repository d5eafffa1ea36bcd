"""Shortest path systems, patches, necklaces and cut graphs on embedded graphs.

Disks are certified combinatorially: a cycle C bounds a disk containing a
subgraph H when cutting the embedding along C produces a genus-0 piece whose
vertices and edges, mapped back through ``origin``, include all of H.
"""

from __future__ import annotations

import itertools
import json
import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from wlgenus.graph import ColouredGraph, Subgraph, connected_components, find_bridges
from wlgenus.surface import (
    EmbeddedGraph,
    cut_along_cycle,
    cycles_of_length,
    embedding_euler_genus,
    euler_genus_at_most,
    graph_euler_genus,
    is_contractible,
    shortest_noncontractible_cycle,
    trace_faces,
)


class NecklaceError(RuntimeError):
    """A necklace condition failed; ``condition`` names it."""

    def __init__(self, condition: str, detail: str = ""):
        super().__init__(f"necklace condition {condition} violated" + (f": {detail}" if detail else ""))
        self.condition = condition


def _e(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


def bfs_distances(G: ColouredGraph, s: int, allowed: frozenset | None = None) -> dict[int, int]:
    dist = {s: 0}
    q = deque([s])
    while q:
        v = q.popleft()
        for w in G.neighbours(v):
            if w not in dist and (allowed is None or w in allowed):
                dist[w] = dist[v] + 1
                q.append(w)
    return dist


# -- shortest path systems -------------------------------------------------------------


@dataclass(frozen=True)
class SPS:
    """A family of shortest source-sink paths, each a vertex tuple."""

    source: int
    sink: int
    paths: frozenset

    @property
    def vertices(self) -> frozenset:
        return frozenset(v for p in self.paths for v in p)

    @property
    def edges(self) -> frozenset:
        return frozenset(_e(p[i], p[i + 1]) for p in self.paths for i in range(len(p) - 1))

    @property
    def length(self) -> int:
        return len(next(iter(self.paths))) - 1

    @property
    def trivial(self) -> bool:
        return len(self.vertices) <= 2

    def subgraph(self) -> Subgraph:
        return Subgraph(self.vertices, self.edges)

    def sorted_paths(self) -> list[tuple]:
        return sorted(self.paths)

    def height(self, v: int) -> int:
        for p in self.paths:
            if v in p:
                return p.index(v)
        raise ValueError(f"vertex {v} is not on the system")

    def articulation(self) -> list[int]:
        common = set.intersection(*(set(p) for p in self.paths))
        return sorted(common, key=self.height)

    def proper_articulation(self) -> list[int]:
        return [v for v in self.articulation() if v not in (self.source, self.sink)]

    def precedes(self, v: int, w: int) -> bool:
        """v appears no later than w on some path."""
        return any(v in p and w in p and p.index(v) <= p.index(w) for p in self.paths)

    def segment(self, v: int, w: int) -> "SPS":
        if not self.precedes(v, w):
            raise ValueError(f"{v} does not precede {w} in the system")
        segs = frozenset(p[p.index(v) : p.index(w) + 1] for p in self.paths if v in p and w in p and p.index(v) <= p.index(w))
        return SPS(v, w, segs)

    def to_json(self) -> dict:
        return {"source": self.source, "sink": self.sink, "paths": [list(p) for p in self.sorted_paths()]}


def _all_shortest(G: ColouredGraph, u: int, u2: int, allowed: frozenset | None = None) -> frozenset:
    du = bfs_distances(G, u, allowed)
    if u2 not in du:
        raise ValueError(f"{u} and {u2} are not connected")
    out = []

    def back(path):
        v = path[-1]
        if v == u:
            out.append(tuple(reversed(path)))
            return
        for w in sorted(G.neighbours(v)):
            if du.get(w) == du[v] - 1:
                path.append(w)
                back(path)
                path.pop()

    back([u2])
    return frozenset(out)


def canonical_sps(G: ColouredGraph, u: int, u2: int) -> SPS:
    """All shortest u-u2 paths of G."""
    return SPS(u, u2, _all_shortest(G, u, u2))


def sps_articulation(Q: SPS) -> list[int]:
    return Q.articulation()


def sps_height(Q: SPS, v: int) -> int:
    return Q.height(v)


def sps_segment(Q: SPS, v: int, w: int) -> SPS:
    return Q.segment(v, w)


def is_sps(G: ColouredGraph, Q: SPS) -> bool:
    """Paths are shortest in G and every shortest source-sink path of G(Q) is a member."""
    d = bfs_distances(G, Q.source).get(Q.sink)
    if d is None or any(len(p) - 1 != d or p[0] != Q.source or p[-1] != Q.sink for p in Q.paths):
        return False
    if any(not G.adjacent(p[i], p[i + 1]) for p in Q.paths for i in range(len(p) - 1)):
        return False
    H = ColouredGraph(G.n, Q.edges)
    return _all_shortest(H, Q.source, Q.sink) == Q.paths


# -- patches ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Patch:
    """An sps lying in a disk. ``boundary`` is C(Q) as a cycle, None when trivial."""

    sps: SPS
    boundary: tuple | None
    boundary_paths: tuple | None
    disk_vertices: frozenset
    disk_edges: frozenset

    @property
    def trivial(self) -> bool:
        return self.sps.trivial

    def internal(self) -> Subgraph:
        return Subgraph(self.disk_vertices, self.disk_edges)


def _disjoint_pairs(Q: SPS):
    paths = Q.sorted_paths()
    for a, b in itertools.combinations(paths, 2):
        if not set(a[1:-1]) & set(b[1:-1]):
            yield a, b


def _own_labels(E: EmbeddedGraph) -> EmbeddedGraph:
    """E with ``origin`` reset, so cut pieces point at E's own vertex ids."""
    if E.origin == tuple(range(E.n)):
        return E
    return EmbeddedGraph(E.graph, E.rotation, E.signs)


def _piece_footprint(P: EmbeddedGraph) -> tuple[frozenset, frozenset]:
    verts = frozenset(P.origin)
    edges = frozenset(_e(P.origin[a], P.origin[b]) for a, b in P.graph.edges)
    return verts, edges


def disk_containing(E: EmbeddedGraph, C: Sequence[int], vertices: Iterable[int], edges: Iterable) -> tuple[frozenset, frozenset] | None:
    """Footprint (vertices, edges) of a genus-0 side of C containing the given subgraph.

    Among admissible sides the one with fewer vertices wins, then the
    smaller sorted vertex list.
    """
    vs, es = frozenset(vertices), frozenset(edges)
    pieces = cut_along_cycle(_own_labels(E), C)
    if len(pieces) != 2:
        return None
    best = None
    for P in pieces:
        if embedding_euler_genus(P) != 0:
            continue
        fv, fe = _piece_footprint(P)
        if vs <= fv and es <= fe:
            key = (len(fv), sorted(fv))
            if best is None or key < best[0]:
                best = (key, fv, fe)
    return None if best is None else (best[1], best[2])


def is_patch(E: EmbeddedGraph, Q: SPS) -> Patch | None:
    if Q.trivial:
        return Patch(Q, None, None, Q.vertices, Q.edges)
    if Q.proper_articulation():
        return None
    best = None
    for a, b in _disjoint_pairs(Q):
        C = a + tuple(reversed(b[1:-1]))
        fp = disk_containing(E, C, Q.vertices, Q.edges)
        if fp is None:
            continue
        key = (len(fp[0]), sorted(fp[0]), a, b)
        if best is None or key < best[0]:
            best = (key, C, (a, b), fp)
    if best is None:
        return None
    _, C, pair, (fv, fe) = best
    return Patch(Q, C, pair, fv, fe)


def internal_graph(E: EmbeddedGraph, patch: Patch) -> Subgraph:
    if patch.trivial:
        raise ValueError("internal graph is defined for non-trivial patches only")
    return patch.internal()


def all_cycles_contractible(E: EmbeddedGraph, vertices: Iterable[int], edges: Iterable) -> bool:
    """Is every cycle of the subgraph (vertices, edges) contractible in E?"""
    H = ColouredGraph(E.n, edges)
    for L in range(3, len(frozenset(vertices)) + 1):
        for C in cycles_of_length(H, L):
            if not is_contractible(E, C):
                return False
    return True


# -- simplifying subgraphs ---------------------------------------------------------------


def _component_graph(G: ColouredGraph, comp: Iterable[int]) -> ColouredGraph:
    return G.induced(sorted(comp))[0]


def component_genera(G: ColouredGraph, removed: Iterable[int], budget: int | None = 200_000) -> list[tuple[frozenset, int]]:
    return [(c, graph_euler_genus(_component_graph(G, c), budget)) for c in connected_components(G, removed)]


def is_simplifying(G: ColouredGraph, g: int, H: Subgraph | Iterable[int], budget: int | None = 200_000) -> bool:
    """Every component of G minus V(H) has Euler genus at most g - 1."""
    if g < 1:
        raise ValueError("g must be at least 1")
    removed = H.vertices if isinstance(H, Subgraph) else frozenset(H)
    return all(euler_genus_at_most(_component_graph(G, c), g - 1, budget) for c in connected_components(G, removed))


def nonplanar_component(G: ColouredGraph, g: int, Q: SPS, budget: int | None = 200_000) -> frozenset | None:
    """The unique component of G minus V(Q) outside E_{g-1}, or None."""
    comps = connected_components(G, Q.vertices)
    bad = [c for c in comps if not euler_genus_at_most(_component_graph(G, c), g - 1, budget)]
    if not bad:
        return None
    if len(bad) > 1:
        raise ValueError("more than one component has Euler genus above g - 1")
    if any(not euler_genus_at_most(_component_graph(G, c), 0) for c in comps if c != bad[0]):
        raise ValueError("a component other than the exceptional one is not planar")
    return bad[0]


# -- necklaces ------------------------------------------------------------------------------


@dataclass(frozen=True)
class Bead:
    fibre: int
    index: int
    sps: SPS
    patch: Patch | None

    @property
    def trivial(self) -> bool:
        return self.sps.trivial


@dataclass(frozen=True)
class Necklace:
    u: tuple  # (u0, u1, u2)
    sps: tuple  # (Q0, Q1, Q2); Q^i runs from u^i to u^{i+1}
    cycle: tuple  # the non-contractible cycle the necklace was built on
    art: tuple  # ((vertex, fibre, height), ...)
    beads: tuple  # Bead per segment between consecutive articulation vertices

    @property
    def art_vertices(self) -> frozenset:
        return frozenset(a[0] for a in self.art)

    @property
    def vertices(self) -> frozenset:
        return frozenset().union(*(Q.vertices for Q in self.sps))

    @property
    def edges(self) -> frozenset:
        return frozenset().union(*(Q.edges for Q in self.sps))


def cycle_distance(C: Sequence[int], a: int, b: int) -> int:
    i, j = C.index(a), C.index(b)
    d = abs(i - j)
    return min(d, len(C) - d)


def satisfies_eq1(C: Sequence[int], us: Sequence[int]) -> bool:
    L = len(C)
    lo, hi = L // 3, -(-L // 3)
    return all(lo <= cycle_distance(C, a, b) <= hi for a, b in itertools.combinations(us, 2))


def choose_cut_points(C: Sequence[int]) -> tuple:
    """Offsets 0, ceil(L/3), ceil(2L/3) on C, nudged if the distance bounds fail."""
    L = len(C)
    base = (0, math.ceil(L / 3), math.ceil(2 * L / 3))
    us = tuple(C[o % L] for o in base)
    if len(set(us)) == 3 and satisfies_eq1(C, us):
        return us
    for d1, d2 in sorted(itertools.product(range(-1, 2), repeat=2), key=lambda t: (abs(t[0]) + abs(t[1]), t)):
        us = (C[0], C[(base[1] + d1) % L], C[(base[2] + d2) % L])
        if len(set(us)) == 3 and satisfies_eq1(C, us):
            return us
    raise NecklaceError("eq1", f"no admissible cut points on a cycle of length {L}")


def _beads(E: EmbeddedGraph, i: int, Q: SPS) -> list[Bead]:
    arts = Q.articulation()
    out = []
    for j, (a, b) in enumerate(zip(arts, arts[1:])):
        seg = Q.segment(a, b)
        patch = None if seg.trivial else is_patch(E, seg)
        out.append(Bead(i, j, seg, patch))
    return out


def _necklace_art(sps: Sequence[SPS]) -> tuple:
    seen = set()
    out = []
    for i, Q in enumerate(sps):
        for v in Q.articulation():
            if v not in seen:
                seen.add(v)
                out.append((v, i, Q.height(v)))
    return tuple(out)


def verify_necklace(E: EmbeddedGraph, B: Necklace) -> None:
    """Re-check the three necklace conditions and reducibility; raises NecklaceError."""
    u = B.u
    if len(set(u)) != 3:
        raise NecklaceError("i", "u0, u1, u2 are not pairwise distinct")
    G = E.graph
    for i in range(3):
        Q = B.sps[i]
        if (Q.source, Q.sink) != (u[i], u[(i + 1) % 3]):
            raise NecklaceError("definition", f"system {i} has wrong endpoints")
        if Q != canonical_sps(G, u[i], u[(i + 1) % 3]):
            raise NecklaceError("definition", f"system {i} is not canonical")
    for i in range(3):
        inter = B.sps[i].vertices & B.sps[(i + 1) % 3].vertices
        if inter != {u[(i + 1) % 3]}:
            raise NecklaceError("ii", f"V(Q{i}) and V(Q{(i + 1) % 3}) meet in {sorted(inter)}")
    for i in range(3):
        Q = B.sps[i]
        cyc_ok = all_cycles_contractible(E, Q.vertices, Q.edges)
        beads_ok = all(b.trivial or b.patch is not None for b in B.beads if b.fibre == i)
        if cyc_ok != beads_ok:
            raise NecklaceError("iii", f"disk certificates disagree on system {i}")
        if not cyc_ok:
            raise NecklaceError("iii", f"G(Q{i}) does not lie in a disk")
    if reducing_witness(E, B) is None:
        raise NecklaceError("reducing", "no choice of paths forms a non-contractible cycle")


def reducing_witness(E: EmbeddedGraph, B: Necklace, limit: int = 100_000) -> tuple | None:
    """Paths (P0, P1, P2), one per system, whose union is a non-contractible cycle."""
    C = B.cycle
    # the segments of the defining cycle come first
    cands = []
    for i in range(3):
        a, b = B.u[i], B.u[(i + 1) % 3]
        if a not in C or b not in C:
            cands.append(B.sps[i].sorted_paths())
            continue
        ia, ib = C.index(a), C.index(b)
        fwd = tuple(C[(ia + t) % len(C)] for t in range((ib - ia) % len(C) + 1))
        bwd = tuple(C[(ia - t) % len(C)] for t in range((ia - ib) % len(C) + 1))
        pref = [p for p in (fwd, bwd) if p in B.sps[i].paths]
        cands.append(pref + [p for p in B.sps[i].sorted_paths() if p not in pref])
    for n, (p0, p1, p2) in enumerate(itertools.product(*cands)):
        if n >= limit:
            break
        cyc = p0[:-1] + p1[:-1] + p2[:-1]
        if len(set(cyc)) != len(cyc) or len(cyc) < 3:
            continue
        if not is_contractible(E, cyc):
            return (p0, p1, p2)
    return None


def build_necklace(E: EmbeddedGraph, C: Sequence[int], us: Sequence[int]) -> Necklace:
    G = E.graph
    sps = tuple(canonical_sps(G, us[i], us[(i + 1) % 3]) for i in range(3))
    beads = tuple(b for i, Q in enumerate(sps) for b in _beads(E, i, Q))
    return Necklace(tuple(us), sps, tuple(C), _necklace_art(sps), beads)


def find_reducing_necklace(E: EmbeddedGraph) -> Necklace:
    """Necklace on a shortest non-contractible cycle, verified before it is returned.

    Assumes a polyhedral embedding of positive genus; that assumption is not
    checked here.
    """
    if embedding_euler_genus(E) < 1:
        raise NecklaceError("precondition", "the embedding has genus 0")
    C = shortest_noncontractible_cycle(E)
    if C is None:
        raise NecklaceError("precondition", "no non-contractible cycle")
    B = build_necklace(E, C, choose_cut_points(C))
    verify_necklace(E, B)
    return B


def find_reducing_necklace_exhaustive(E: EmbeddedGraph) -> list[Necklace]:
    """Every reducing necklace on vertex triples (slow; for cross-checks)."""
    out = []
    for us in itertools.permutations(range(E.n), 3):
        if us[0] != min(us):
            continue
        try:
            B = build_necklace(E, (), us)
            verify_necklace(E, B)
        except (NecklaceError, ValueError):
            continue
        out.append(B)
    return out


# -- cut graph -------------------------------------------------------------------------------


@dataclass(frozen=True)
class CutResult:
    inside: Subgraph
    outside: Subgraph
    cut: Subgraph
    interior_vertices: frozenset
    interior_edges: frozenset
    components: tuple
    component_genus: tuple

    def to_json(self) -> dict:
        return {
            "inside": {"vertices": sorted(self.inside.vertices), "edges": sorted(map(list, self.inside.edges))},
            "outside": {"vertices": sorted(self.outside.vertices), "edges": sorted(map(list, self.outside.edges))},
            "cut": {"vertices": sorted(self.cut.vertices), "edges": sorted(map(list, self.cut.edges))},
            "region_interior_vertices": sorted(self.interior_vertices),
            "components": [{"vertices": sorted(c), "euler_genus": g} for c, g in zip(self.components, self.component_genus)],
        }


def cut_graph(E: EmbeddedGraph, B: Necklace, budget: int | None = 200_000) -> CutResult:
    G = E.graph
    inside_v: set = set()
    inside_e: set = set()
    int_v: set = set()
    int_e: set = set()
    for b in B.beads:
        if b.trivial:
            inside_v |= b.sps.vertices
            inside_e |= b.sps.edges
            continue
        if b.patch is None:
            raise NecklaceError("beads", f"bead {b.fibre}.{b.index} is not a patch")
        p = b.patch
        inside_v |= p.disk_vertices
        inside_e |= p.disk_edges
        cyc = p.boundary
        cv = frozenset(cyc)
        ce = frozenset(_e(cyc[k], cyc[(k + 1) % len(cyc)]) for k in range(len(cyc)))
        int_v |= p.disk_vertices - cv
        int_e |= p.disk_edges - ce
    out_v = frozenset(range(G.n)) - int_v
    out_e = frozenset(e for e in G.edges if e not in int_e and e[0] in out_v and e[1] in out_v)
    art = B.art_vertices
    cut_v = out_v - art
    cut_e = frozenset(e for e in out_e if e[0] in cut_v and e[1] in cut_v)
    H = ColouredGraph(G.n, cut_e)
    comps = [c for c in connected_components(H, frozenset(range(G.n)) - cut_v)]
    genus = []
    for c in comps:
        sub, _ = H.induced(sorted(c))
        genus.append(graph_euler_genus(sub, budget))
    return CutResult(
        Subgraph(frozenset(inside_v), frozenset(inside_e)),
        Subgraph(out_v, out_e),
        Subgraph(cut_v, cut_e),
        frozenset(int_v),
        frozenset(int_e),
        tuple(comps),
        tuple(genus),
    )


def necklace_report(E: EmbeddedGraph, B: Necklace, cut: CutResult | None = None) -> dict:
    rep = {
        "u": list(B.u),
        "cycle": list(B.cycle),
        "euler_genus": embedding_euler_genus(E),
        "articulation": [{"vertex": v, "fibre": i, "height": h} for v, i, h in B.art],
        "beads": [
            {
                "fibre": b.fibre,
                "index": b.index,
                "ends": [b.sps.source, b.sps.sink],
                "trivial": b.trivial,
                "boundary": None if b.patch is None or b.patch.boundary is None else list(b.patch.boundary),
            }
            for b in B.beads
        ],
        "systems": [Q.to_json() for Q in B.sps],
    }
    if cut is not None:
        rep["cut"] = cut.to_json()
    return rep


def necklace_dot(E: EmbeddedGraph, B: Necklace, cut: CutResult | None = None) -> str:
    art = B.art_vertices
    lines = ["graph necklace {"]
    for v in range(E.n):
        attrs = []
        if v in art:
            attrs.append('shape=box, color=red')
        elif cut is not None and v in cut.inside.vertices:
            attrs.append("color=blue")
        elif cut is not None and v in cut.cut.vertices:
            attrs.append("color=darkgreen")
        lines.append(f"  {v}" + (f" [{', '.join(attrs)}];" if attrs else ";"))
    nl_edges = B.edges
    for a, b in E.graph.sorted_edges():
        style = " [penwidth=3]" if (a, b) in nl_edges else ""
        lines.append(f"  {a} -- {b}{style};")
    lines.append("}")
    return "\n".join(lines)


# -- simplifying patches, regional graphs, fibres ------------------------------------------------


def subpatches(E: EmbeddedGraph, Q: SPS, proper: bool = False) -> list[Patch]:
    """Segments of Q that are patches, ordered by (source height, sink height)."""
    out = []
    verts = sorted(Q.vertices, key=lambda v: (Q.height(v), v))
    for v in verts:
        for w in verts:
            if v == w or not Q.precedes(v, w):
                continue
            if proper and (v, w) == (Q.source, Q.sink):
                continue
            seg = Q.segment(v, w)
            if seg.proper_articulation():
                continue
            p = is_patch(E, seg)
            if p is not None:
                out.append(p)
    return out


def minimal_simplifying_patch(E: EmbeddedGraph, g: int | None = None, budget: int | None = 200_000) -> Patch | None:
    """A simplifying patch all of whose proper subpatches are non-simplifying."""
    G = E.graph
    g = embedding_euler_genus(E) if g is None else g
    cands = []
    for u in range(G.n):
        for u2 in range(u + 1, G.n):
            Q = canonical_sps(G, u, u2)
            if Q.proper_articulation():
                continue
            p = is_patch(E, Q)
            if p is not None and is_simplifying(G, g, Q.vertices, budget):
                cands.append(p)
    if not cands:
        return None
    cands.sort(key=lambda p: (len(p.sps.vertices), p.sps.source, p.sps.sink))
    p = cands[0]
    while True:
        smaller = [s for s in subpatches(E, p.sps, proper=True) if is_simplifying(G, g, s.sps.vertices, budget)]
        if not smaller:
            return p
        p = min(smaller, key=lambda s: (len(s.sps.vertices), s.sps.source, s.sps.sink))


def regional_graph(E: EmbeddedGraph, patch: Patch, g: int | None = None, budget: int | None = 200_000) -> Subgraph:
    """Edges of the system plus the internal graphs of its non-trivial non-simplifying subpatches."""
    G = E.graph
    g = embedding_euler_genus(E) if g is None else g
    vs = set(patch.sps.vertices)
    es = set(patch.sps.edges)
    for s in subpatches(E, patch.sps):
        if s.trivial:
            continue
        if not is_simplifying(G, g, s.sps.vertices, budget):
            vs |= s.disk_vertices
            es |= s.disk_edges
    return Subgraph(frozenset(vs), frozenset(es))


def _face_key(E: EmbeddedGraph, darts) -> tuple:
    return tuple(sorted(_e(E.origin[a], E.origin[b]) for a, b in darts))


def _disk_faces(E: EmbeddedGraph, patch: Patch) -> list[tuple]:
    """Faces of E inside D(patch) as sorted edge lists (the glued face dropped)."""
    pieces = cut_along_cycle(_own_labels(E), patch.boundary)
    for P in pieces:
        fv, fe = _piece_footprint(P)
        if fv == patch.disk_vertices and fe == patch.disk_edges and embedding_euler_genus(P) == 0:
            keys = [_face_key(P, f.darts) for f in trace_faces(P)]
            C = patch.boundary
            glued = tuple(sorted(_e(C[k], C[(k + 1) % len(C)]) for k in range(len(C))))
            keys.remove(glued)
            return keys
    raise ValueError("disk piece not found")


@dataclass(frozen=True)
class FibreDecomposition:
    fibres: tuple  # SPS per fibre, in the cyclic order across the disk when it could be read off
    parts: tuple  # vertex set of each H_i (with the two ends)
    gap_regions: int
    ordered: bool
    dangling: tuple  # pairs of fibre indices with no connecting bridge
    adjacent: tuple  # pairs of adjacent fibre indices


def fibres(E: EmbeddedGraph, patch: Patch, g: int | None = None, budget: int | None = 200_000) -> FibreDecomposition:
    G = E.graph
    g = embedding_euler_genus(E) if g is None else g
    if patch.trivial:
        raise ValueError("fibres are defined for non-trivial patches")
    if not is_simplifying(G, g, patch.sps.vertices, budget):
        raise ValueError("fibres are defined for simplifying patches")
    Q = patch.sps
    u, u2 = Q.source, Q.sink
    J = regional_graph(E, patch, g, budget)
    JG = ColouredGraph(G.n, J.edges)
    outside = (frozenset(range(G.n)) - J.vertices) | {u, u2}
    inner = connected_components(JG, outside)
    parts = [c | {u, u2} for c in inner]
    fib = []
    for part in parts:
        fib.append(SPS(u, u2, frozenset(p for p in Q.paths if set(p) <= part)))

    # gap regions: faces of D not in R, glued across non-J edges and vertices
    r_faces: set = set()
    for s in subpatches(E, Q):
        if not s.trivial and not is_simplifying(G, g, s.sps.vertices, budget):
            r_faces.update(_disk_faces(E, s))
    faces = [f for f in _disk_faces(E, patch) if f not in r_faces]
    parent = list(range(len(faces)))

    def root(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    owner: dict = {}
    for idx, f in enumerate(faces):
        keys = [("e", e) for e in f if e not in J.edges]
        keys += [("v", v) for e in f for v in e if v not in J.vertices]
        for k in keys:
            if k in owner:
                parent[root(idx)] = root(owner[k])
            else:
                owner[k] = idx
    gaps: dict = {}
    for idx in range(len(faces)):
        gaps.setdefault(root(idx), []).append(faces[idx])
    gap_list = list(gaps.values())

    # order fibres along the chain fibre - gap - fibre - ...
    touch = []
    for gfaces in gap_list:
        vs = {v for f in gfaces for e in f for v in e}
        touch.append(frozenset(i for i, c in enumerate(inner) if vs & c))
    order = list(range(len(fib)))
    ordered = False
    if len(fib) >= 2 and all(len(t) == 2 for t in touch):
        nbr: dict = {i: set() for i in range(len(fib))}
        for t in touch:
            a, b = sorted(t)
            nbr[a].add(b)
            nbr[b].add(a)
        ends = sorted(i for i in nbr if len(nbr[i]) == 1)
        if len(ends) == 2 and all(len(x) <= 2 for x in nbr.values()):
            walk = [ends[0]]
            while len(walk) < len(fib):
                nxt = [w for w in nbr[walk[-1]] if w not in walk]
                if not nxt:
                    break
                walk.append(nxt[0])
            if len(walk) == len(fib):
                order, ordered = walk, True
    fib = [fib[i] for i in order]
    parts = [parts[i] for i in order]
    inner = [inner[i] for i in order]

    bridges = find_bridges(G, Subgraph(J.vertices, J.edges))
    connected_pairs = set()
    for br in bridges:
        hit = [i for i, c in enumerate(inner) if br.attachment & c]
        for a, b in itertools.combinations(hit, 2):
            connected_pairs.add((a, b))
    ell = len(fib)
    cyc_pairs = [(i, (i + 1) % ell) for i in range(ell)] if ell > 2 else ([(0, 1)] if ell == 2 else [])
    dangling = tuple(sorted(tuple(sorted(p)) for p in cyc_pairs if tuple(sorted(p)) not in connected_pairs))
    dangling_set = {i for p in dangling for i in p}
    adjacent = tuple(
        sorted(
            (a, b)
            for a, b in itertools.combinations(range(ell), 2)
            if (a, b) in connected_pairs or (a in dangling_set and b in dangling_set and (a, b) in {tuple(sorted(p)) for p in cyc_pairs})
        )
    )
    return FibreDecomposition(tuple(fib), tuple(parts), len(gap_list), ordered, dangling, adjacent)


def report_json(obj: dict) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)
