"""Named experiments with deterministic, machine-readable reports.

Each experiment takes a config mapping (all keys optional) and returns a
:class:`Report`.  Randomness flows from ``config["seed"]`` through a single
``random.Random``; the seed is recorded in the report.  Wall-clock times are
kept on the report object but never written to its JSON, so equal seeds give
byte-identical output.
"""

from __future__ import annotations

import json
import random
import time
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from typing import Callable

import numpy as np

from wlgenus.cfi import cfi_pair, twist_absorbable
from wlgenus.corpus import random_rotation_systems, torus_corpus, toroidal_k5
from wlgenus.decomp import NecklaceError, cut_graph, find_reducing_necklace, verify_necklace
from wlgenus.graph import ColouredGraph, complete_bipartite, complete_graph, individualise
from wlgenus.logic import Count, duplicator_winning_positions, evaluate_table, free_vars, sample_formulas
from wlgenus.oracles import OracleLimitError, automorphism_orbits, enumerate_graphs, enumerate_trees, random_automorphism
from wlgenus.surface import (
    GenusBudgetExceeded,
    cut_along_cycle,
    embedding_euler_genus,
    graph_euler_genus,
    is_orientable,
    noncontractible_cycles,
    trace_faces,
)
from wlgenus.wl import ColourTable, _partition, distinguishes, refine_jointly, wl_fingerprint, wl_refine


class UnknownExperimentError(KeyError):
    pass


@dataclass
class Report:
    experiment: str
    seed: int
    config: dict
    instances: list = field(default_factory=list)
    verdicts: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return bool(self.verdicts) and all(self.verdicts.values())

    def to_json(self) -> dict:
        return {
            "experiment": self.experiment,
            "seed": self.seed,
            "config": self.config,
            "verdicts": self.verdicts,
            "passed": self.passed,
            "notes": self.notes,
            "instances": self.instances,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2, default=str)

    def summary(self) -> str:
        bad = [k for k, v in self.verdicts.items() if not v]
        state = "PASS" if self.passed else "FAIL"
        return f"{self.experiment}: {state}" + (f" (failed: {', '.join(bad)})" if bad else "")


def _map(fn: Callable, items: list, workers: int) -> list:
    """Map in input order, optionally across processes."""
    if workers <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * workers))))


def _graphs_upto(n_max: int, connected_only: bool = False) -> list[ColouredGraph]:
    return [G for n in range(1, n_max + 1) for G in enumerate_graphs(n, connected_only)]


# -- planar graphs and 3-WL -------------------------------------------------


def _planar_wl(config: dict, rng: random.Random, report: Report) -> None:
    import networkx as nx

    n_max = config.get("n_max", 7)
    k = config.get("k", 3)
    failures = []
    for n in range(1, n_max + 1):
        family = list(enumerate_graphs(n))
        table = ColourTable()
        buckets = defaultdict(list)
        for i, G in enumerate(family):
            buckets[wl_fingerprint(G, k, table)].append(i)
        checked = 0
        for i, G in enumerate(family):
            if not G.is_connected() or not nx.check_planarity(G.to_networkx())[0]:
                continue
            checked += 1
            clash = [j for j in buckets[wl_fingerprint(G, k, table)] if j != i]
            # family members are pairwise non-isomorphic, so any clash is a failure
            if clash:
                failures.append({"n": n, "graph": G.to_json(), "clashes": len(clash)})
        report.instances.append({"n": n, "family": len(family), "planar_connected": checked})
    report.instances.extend(failures)
    report.verdicts["identified"] = not failures


# -- CFI ---------------------------------------------------------------------


def _cfi_k4(config: dict, rng: random.Random, report: Report) -> None:
    base = ColouredGraph.from_json(config["base"]) if "base" in config else complete_graph(4)
    k_max = config.get("k_max", 3)
    pair = cfi_pair(base)
    iso = twist_absorbable(pair, max_order=max(64, pair.size))
    per_k = {k: distinguishes(pair.untwisted, pair.twisted, k) for k in range(1, k_max + 1)}
    threshold = next((k for k, d in per_k.items() if d), None)
    report.instances.append(
        {
            "size": pair.size,
            "twist_edge": list(pair.twist_edge),
            "isomorphic": iso,
            "distinguishes": {str(k): d for k, d in per_k.items()},
            "threshold": threshold if threshold is not None else f">{k_max}",
        }
    )
    report.verdicts["non_isomorphic"] = iso is False
    report.verdicts["not_1wl"] = not per_k.get(1, True)
    report.verdicts["not_2wl"] = not per_k.get(2, True)
    # a threshold above k_max (but <= 4) is admissible when k = 4 is skipped
    report.verdicts["threshold_le_4"] = threshold is not None and threshold <= 4 or (threshold is None and k_max < 4)


# -- logic versus WL -----------------------------------------------------------


def _double_edge_swap(G: ColouredGraph, rng: random.Random) -> ColouredGraph:
    edges = G.sorted_edges()
    for _ in range(20):
        if len(edges) < 2:
            break
        (a, b), (c, d) = rng.sample(edges, 2)
        if rng.random() < 0.5:
            c, d = d, c
        if len({a, b, c, d}) < 4 or G.adjacent(a, d) or G.adjacent(c, b):
            continue
        new = set(edges) - {tuple(sorted((a, b))), tuple(sorted((c, d)))}
        new |= {tuple(sorted((a, d))), tuple(sorted((c, b)))}
        return ColouredGraph(G.n, new)
    return G.relabel(list(range(G.n))[::-1])


def _random_graph(rng: random.Random, n: int, m: int) -> ColouredGraph:
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    return ColouredGraph(n, rng.sample(pairs, min(m, len(pairs))))


def _logic_pairs(count: int, n_max: int, rng: random.Random) -> list[tuple]:
    out = []
    for i in range(count):
        n = rng.randint(2, n_max)
        m = rng.randint(0, n * (n - 1) // 2)
        G = _random_graph(rng, n, m)
        kind = i % 3
        if kind == 0:
            perm = list(range(n))
            rng.shuffle(perm)
            H = G.relabel(perm)
        elif kind == 1:
            H = _double_edge_swap(G, rng)
        else:
            H = _random_graph(rng, n, m)
        out.append((G, H, rng.randrange(2**31)))
    return out


def _logic_instance(args, ks=(1, 2), formulas=100, depth=4) -> dict:
    G, H, fseed = args
    res = {"n": G.n, "m_G": len(G.edges), "m_H": len(H.edges), "game_mismatch": 0, "formula_mismatch": 0}
    for k in ks:
        cg, ch = refine_jointly([G, H], k)
        n = G.n
        same = cg.colouring.reshape((n,) * k + (1,) * k) == ch.colouring.reshape((1,) * k + (n,) * k)
        W = duplicator_winning_positions(G, H, k)
        res["game_mismatch"] += int((W != same).sum())
        names = [f"x{i}" for i in range(1, k + 2)]
        flatG, flatH = cg.colouring.reshape(-1), ch.colouring.reshape(-1)
        for phi in sample_formulas(k + 1, depth, fseed + k, count=formulas, names=names):
            if names[-1] in free_vars(phi):
                phi = Count(1, names[-1], phi)
            tg = evaluate_table(G, phi, names)[(Ellipsis, 0)].reshape(-1)
            th = evaluate_table(H, phi, names)[(Ellipsis, 0)].reshape(-1)
            # within each colour class, across both graphs, the truth value is constant
            truth: dict = {}
            for cols, vals in ((flatG, tg), (flatH, th)):
                for c, t in zip(cols.tolist(), vals.tolist()):
                    if truth.setdefault(c, t) != t:
                        res["formula_mismatch"] += 1
                        break
    return res


def _logic_wl(config: dict, rng: random.Random, report: Report) -> None:
    pairs = _logic_pairs(config.get("pairs", 200), config.get("n_max", 7), rng)
    fn = partial(_logic_instance, ks=tuple(config.get("ks", (1, 2))), formulas=config.get("formulas", 100), depth=config.get("depth", 4))
    results = _map(fn, pairs, config.get("workers", 1))
    report.instances.extend(results)
    report.verdicts["game_equals_colours"] = all(r["game_mismatch"] == 0 for r in results)
    report.verdicts["formulas_respect_colours"] = all(r["formula_mismatch"] == 0 for r in results)


# -- necklaces on the torus -------------------------------------------------------


def _necklace_instance(item) -> dict:
    E, name = item
    res = {"name": name}
    try:
        B = find_reducing_necklace(E)
        verify_necklace(E, B)
        cut = cut_graph(E, B)
    except NecklaceError as exc:
        res.update(ok=False, error=f"condition {exc.condition}: {exc}")
        return res
    except GenusBudgetExceeded as exc:
        res.update(ok=False, error=f"genus budget exceeded: {exc}")
        return res
    res["u"] = list(B.u)
    res["cycle"] = list(B.cycle)
    res["component_genus"] = list(cut.component_genus)
    res["ok"] = all(g == 0 for g in cut.component_genus)
    return res


def _necklace_torus(config: dict, rng: random.Random, report: Report) -> None:
    corpus = torus_corpus()
    results = _map(_necklace_instance, list(zip(corpus.entries, corpus.provenance)), config.get("workers", 1))
    report.instances.extend(results)
    for r in results:
        report.verdicts[r["name"]] = r["ok"]


# -- genus ground truths ---------------------------------------------------------


def _genus_truths(config: dict, rng: random.Random, report: Report) -> None:
    budget = config.get("budget", 2_000_000)
    expected = {"K4": (complete_graph(4), 0), "K5": (complete_graph(5), 1), "K3,3": (complete_bipartite(3, 3), 1)}
    for name, (G, want) in expected.items():
        try:
            got = graph_euler_genus(G, budget=budget)
        except GenusBudgetExceeded as exc:
            got = f"budget exceeded ({exc.lower_bound}..{exc.upper_bound})"
        report.instances.append({"graph": name, "euler_genus": got, "expected": want})
        report.verdicts[f"eg({name})={want}"] = got == want
    E = toroidal_k5()
    eg, faces = embedding_euler_genus(E), len(trace_faces(E))
    report.instances.append({"embedding": "toroidal K5", "euler_genus": eg, "faces": faces})
    report.verdicts["toroidal K5 eg=2, 5 faces"] = eg == 2 and faces == 5


# -- trees and 1-WL -------------------------------------------------------------------


def _trees_wl1(config: dict, rng: random.Random, report: Report) -> None:
    failures = 0
    for n in range(1, config.get("n_max", 10) + 1):
        trees = list(enumerate_trees(n))
        table = ColourTable()
        prints = [wl_fingerprint(T, 1, table) for T in trees]
        clashes = len(prints) - len(set(prints))
        failures += clashes
        report.instances.append({"n": n, "trees": len(trees), "clashes": clashes})
    report.verdicts["all_pairs_distinguished"] = failures == 0


# -- orbit determination -----------------------------------------------------------


def _orbits(config: dict, rng: random.Random, report: Report) -> None:
    bad = []
    for n in range(1, config.get("n_max", 6) + 1):
        family = list(enumerate_graphs(n))
        table = ColourTable()
        orbit_of = []
        buckets = defaultdict(list)
        for gi, G in enumerate(family):
            orb = {v: i for i, o in enumerate(automorphism_orbits(G)) for v in o}
            orbit_of.append(orb)
            for v in range(n):
                buckets[wl_fingerprint(individualise(G, [v]), 1, table)].append((gi, orb[v]))
        hypothesis = 0
        for gi, G in enumerate(family):
            ok = True
            for v in range(n):
                fp = wl_fingerprint(individualise(G, [v]), 1, table)
                # family members are non-isomorphic, so G_v ~ H_w iff H is G and w is in v's orbit
                if any(x != (gi, orbit_of[gi][v]) for x in buckets[fp]):
                    ok = False
                    break
            if not ok:
                continue
            hypothesis += 1
            classes = _partition(wl_refine(G, 2).vertex_colours())
            orbits = frozenset(frozenset(o) for o in automorphism_orbits(G))
            if classes != orbits:
                bad.append({"n": n, "graph": G.to_json()})
        report.instances.append({"n": n, "graphs": len(family), "hypothesis_holds": hypothesis})
    report.instances.extend(bad)
    report.verdicts["2wl_classes_equal_orbits"] = not bad


# -- refinement invariants ---------------------------------------------------------


def _refine_instance(G: ColouredGraph, ks=(1, 2), automorphisms=50, seed=0) -> dict:
    rng = random.Random(seed)
    res = {"n": G.n, "m": len(G.edges), "monotone": True, "rounds_ok": True, "equivariant": True}
    perms = [random_automorphism(G, rng) for _ in range(automorphisms)]
    for k in ks:
        S = wl_refine(G, k, audit=True)
        prev = None
        for C in S.history:
            part = _partition(C.reshape(-1).tolist())
            if prev is not None and not all(any(b <= a for a in prev) for b in part):
                res["monotone"] = False
            prev = part
        if S.rounds > G.n**k:
            res["rounds_ok"] = False
        C = S.colouring
        for p in perms:
            idx = np.array(p)
            moved = C[np.ix_(*([idx] * k))]
            # C(pi(u)) must equal C(u)
            if not np.array_equal(moved, C):
                res["equivariant"] = False
    return res


def _refine_invariants(config: dict, rng: random.Random, report: Report) -> None:
    graphs = _graphs_upto(config.get("n_max", 7))
    seeds = [rng.randrange(2**31) for _ in graphs]
    ks = tuple(config.get("ks", (1, 2, 3)))
    autos = config.get("automorphisms", 50)
    items = list(zip(graphs, seeds))
    results = _map(partial(_refine_star, ks=ks, automorphisms=autos), items, config.get("workers", 1))
    report.instances.append({"graphs": len(graphs), "ks": list(ks), "automorphisms_per_graph": autos})
    for key in ("monotone", "rounds_ok", "equivariant"):
        report.verdicts[key] = all(r[key] for r in results)
    report.instances.extend(r for r in results if not (r["monotone"] and r["rounds_ok"] and r["equivariant"]))


def _refine_star(item, **kw):
    G, seed = item
    return _refine_instance(G, seed=seed, **kw)


# -- surface surgery ---------------------------------------------------------------


def _surgery_instance(E) -> dict:
    faces = trace_faces(E)
    eg = embedding_euler_genus(E)
    res = {
        "n": E.graph.n,
        "m": len(E.graph.edges),
        "euler_genus": eg,
        "dart_conservation": sum(len(f.darts) for f in faces) == 2 * len(E.graph.edges),
        "parity": (not is_orientable(E)) or eg % 2 == 0,
        "noncontractible": 0,
        "sum_drop_violations": [],
        "piece_drop_ok": True,
    }
    for C in noncontractible_cycles(E):
        res["noncontractible"] += 1
        pieces = [embedding_euler_genus(P) for P in cut_along_cycle(E, C)]
        if sum(pieces) > eg - 1:
            res["sum_drop_violations"].append({"cycle": list(C), "pieces": pieces})
        if any(p >= eg for p in pieces):
            res["piece_drop_ok"] = False
    return res


def _surgery(config: dict, rng: random.Random, report: Report) -> None:
    count = config.get("count", 500)
    corpus = random_rotation_systems(count, rng.randrange(2**31), config.get("max_n", 8), config.get("max_m", 14))
    results = _map(_surgery_instance, corpus.entries, config.get("workers", 1))
    for r, prov in zip(results, corpus.provenance):
        r["provenance"] = prov
    report.instances.extend(results)
    report.verdicts["dart_conservation"] = all(r["dart_conservation"] for r in results)
    report.verdicts["orientability_parity"] = all(r["parity"] for r in results)
    report.verdicts["cut_sum_drop"] = all(not r["sum_drop_violations"] for r in results)
    report.notes.append(
        "per-piece drop (every piece has smaller Euler genus): "
        + ("holds" if all(r["piece_drop_ok"] for r in results) else "violated")
    )
    report.notes.append(f"non-contractible cycles checked: {sum(r['noncontractible'] for r in results)}")


EXPERIMENTS: dict[str, tuple[str, Callable]] = {
    "planar-wl3": ("AC-1", _planar_wl),
    "cfi-k4": ("AC-2", _cfi_k4),
    "logic-wl": ("AC-3", _logic_wl),
    "necklace-torus": ("AC-4", _necklace_torus),
    "genus-truths": ("AC-5", _genus_truths),
    "trees-wl1": ("AC-6", _trees_wl1),
    "orbits": ("AC-7", _orbits),
    "refine-invariants": ("AC-8", _refine_invariants),
    "surgery": ("AC-9", _surgery),
}
_ALIASES = {ac: name for name, (ac, _) in EXPERIMENTS.items()}


def run_experiment(name: str, config: dict | None = None) -> Report:
    """Run a named experiment (or its criterion id, e.g. ``"AC-4"``)."""
    name = _ALIASES.get(name, name)
    if name not in EXPERIMENTS:
        raise UnknownExperimentError(f"unknown experiment {name!r}; known: {', '.join(EXPERIMENTS)}")
    config = dict(config or {})
    seed = int(config.setdefault("seed", 0))
    report = Report(name, seed, {k: v for k, v in sorted(config.items()) if k != "workers"})
    start = time.perf_counter()
    try:
        EXPERIMENTS[name][1](config, random.Random(seed), report)
    except (OracleLimitError, GenusBudgetExceeded) as exc:
        report.verdicts["within_budget"] = False
        report.notes.append(f"resource budget exceeded: {exc}")
    report.elapsed = time.perf_counter() - start
    return report
