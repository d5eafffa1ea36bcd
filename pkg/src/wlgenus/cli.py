"""Command-line interface: ``wlgenus <subcommand> ...``.

Exit status is 0 on success, 1 when a predicate's verdict is false and 2 on
any error (bad input, budget exhausted, unknown experiment).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from wlgenus.graph import ColouredGraph
from wlgenus.surface import EmbeddedGraph


class _Verdict(Exception):
    """Raised to leave with status 1 after printing a result."""


def _load_json(path: str):
    return json.loads(Path(path).read_text())


def _graph(path: str) -> ColouredGraph:
    return ColouredGraph.from_json(_load_json(path))


def _embedding(path: str) -> EmbeddedGraph:
    return EmbeddedGraph.from_json(_load_json(path))


def _family(source: str, n: int) -> list[ColouredGraph]:
    """``all`` means every graph of order n; otherwise a JSON file holding a list of graphs."""
    if source == "all":
        from wlgenus.oracles import enumerate_graphs

        return list(enumerate_graphs(n))
    data = _load_json(source)
    if isinstance(data, dict) and "entries" in data:
        from wlgenus.corpus import Corpus

        return [e for e in Corpus.from_json(data).entries if isinstance(e, ColouredGraph)]
    return [ColouredGraph.from_json(obj) for obj in data]


def _graph_dot(G: ColouredGraph, classes=None, name="G") -> str:
    lines = [f"graph {name} {{"]
    for v in range(G.n):
        label = f"{v}" if classes is None else f"{v}\\nc{classes[v]}"
        lines.append(f'  {v} [label="{label}"];')
    lines += [f"  {u} -- {v};" for u, v in G.sorted_edges()]
    lines.append("}")
    return "\n".join(lines)


def _emit(args, payload, dot: str | None = None) -> None:
    if args.format == "dot":
        if dot is None:
            raise ValueError(f"{args.command} has no DOT output")
        print(dot)
    else:
        print(json.dumps(payload, indent=2, sort_keys=True, default=str))


def _time_limit(args) -> float | None:
    return None if args.budget_ms is None else args.budget_ms / 1000.0


# -- subcommands -----------------------------------------------------------------


def cmd_refine(args) -> None:
    from wlgenus.wl import wl_refine

    G = _graph(args.graph)
    S = wl_refine(G, args.k)
    _emit(args, S.to_json(), _graph_dot(G, S.vertex_colours()))


def cmd_distinguish(args) -> None:
    from wlgenus.wl import distinguishes

    verdict = distinguishes(_graph(args.a), _graph(args.b), args.k)
    _emit(args, {"k": args.k, "distinguishes": verdict})
    if not verdict:
        raise _Verdict


def cmd_wl_dim(args) -> None:
    from wlgenus.wl import wl_dimension_within

    G = _graph(args.graph)
    dim = wl_dimension_within(G, _family(args.family, G.n), args.kmax)
    _emit(args, {"kmax": args.kmax, "dimension": dim if dim is not None else "NotFound"})
    if dim is None:
        raise _Verdict


def cmd_genus(args) -> None:
    from wlgenus.surface import embedding_euler_genus, is_orientable, minimum_genus_embedding

    if args.embedding:
        E = _embedding(args.embedding)
        payload = {"euler_genus": embedding_euler_genus(E), "orientable": is_orientable(E)}
    else:
        E = minimum_genus_embedding(_graph(args.graph), budget=None, time_limit=_time_limit(args))
        payload = {"euler_genus": embedding_euler_genus(E), "embedding": E.to_json()}
    _emit(args, payload)


def cmd_faces(args) -> None:
    from wlgenus.surface import cut_along_cycle, embedding_euler_genus, is_orientable, trace_faces

    E = _embedding(args.embedding)
    faces = trace_faces(E)
    payload = {
        "faces": [[list(d) for d in f.darts] for f in faces],
        "num_faces": len(faces),
        "euler_genus": embedding_euler_genus(E),
        "orientable": is_orientable(E),
    }
    if args.cut:
        cycle = [int(x) for x in args.cut.split(",")]
        pieces = cut_along_cycle(E, cycle)
        payload["pieces"] = [{"n": P.graph.n, "euler_genus": embedding_euler_genus(P)} for P in pieces]
        if args.out_prefix:
            for i, P in enumerate(pieces):
                Path(f"{args.out_prefix}_piece{i}.json").write_text(json.dumps(P.to_json(), indent=2))
    _emit(args, payload)


def _necklace(args):
    from wlgenus.decomp import find_reducing_necklace, verify_necklace

    E = _embedding(args.embedding)
    B = find_reducing_necklace(E)
    verify_necklace(E, B)
    return E, B


def cmd_necklace(args) -> None:
    from wlgenus.decomp import NecklaceError, necklace_dot, necklace_report

    try:
        E, B = _necklace(args)
    except NecklaceError as exc:
        _emit(args, {"found": False, "condition": exc.condition, "detail": str(exc)}, f"// {exc}")
        raise _Verdict from exc
    _emit(args, necklace_report(E, B), necklace_dot(E, B))


def cmd_cut(args) -> None:
    from wlgenus.decomp import NecklaceError, cut_graph, necklace_dot, necklace_report

    try:
        E, B = _necklace(args)
    except NecklaceError as exc:
        _emit(args, {"found": False, "condition": exc.condition, "detail": str(exc)}, f"// {exc}")
        raise _Verdict from exc
    cut = cut_graph(E, B)
    _emit(args, necklace_report(E, B, cut), necklace_dot(E, B, cut))


def cmd_cfi(args) -> None:
    from wlgenus.cfi import cfi_pair, cfi_threshold, expected_size

    base = _graph(args.base)
    pair = cfi_pair(base)
    report = {
        "base_n": base.n,
        "twist_edge": list(pair.twist_edge),
        "size": pair.size,
        "expected_size": expected_size(base),
        "base_is_cycle": pair.base_is_cycle,
    }
    if args.threshold:
        t = cfi_threshold(pair, args.threshold)
        report["threshold"] = t if t is not None else f">{args.threshold}"
    if args.out_prefix:
        Path(f"{args.out_prefix}_untwisted.json").write_text(pair.untwisted.dumps())
        Path(f"{args.out_prefix}_twisted.json").write_text(pair.twisted.dumps())
        Path(f"{args.out_prefix}_report.json").write_text(json.dumps(report, indent=2, sort_keys=True))
    _emit(args, report, _graph_dot(pair.untwisted, name="CFI"))


def cmd_iso(args) -> None:
    from wlgenus.oracles import find_isomorphism

    G, H = _graph(args.a), _graph(args.b)
    f = find_isomorphism(G, H, max_order=args.max_order)
    _emit(args, {"isomorphic": f is not None, "witness": f})
    if f is None:
        raise _Verdict


def cmd_enumerate(args) -> None:
    from wlgenus.oracles import enumerate_graphs

    graphs = list(enumerate_graphs(args.n, args.connected))
    if args.format == "dot":
        print("\n".join(_graph_dot(G, name=f"G{i}") for i, G in enumerate(graphs)))
    else:
        _emit(args, {"n": args.n, "connected_only": args.connected, "count": len(graphs), "graphs": [G.to_json() for G in graphs]})


def cmd_experiment(args) -> None:
    from wlgenus.experiments import run_experiment

    config = json.loads(args.config) if args.config else {}
    config["seed"] = args.seed
    if args.workers:
        config["workers"] = args.workers
    report = run_experiment(args.name, config)
    print(report.dumps())
    print(report.summary(), file=sys.stderr)
    if not report.passed:
        raise _Verdict


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "dot"], default="json")
    common.add_argument("--budget-ms", type=int, default=None, help="wall-clock budget for searches")
    common.add_argument("--seed", type=int, default=0)

    p = argparse.ArgumentParser(prog="wlgenus", description=__doc__.splitlines()[0], parents=[common])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_, parents=[common])
        sp.set_defaults(func=fn)
        return sp

    sp = add("refine", cmd_refine, "stable k-WL colouring of a graph")
    sp.add_argument("-k", type=int, required=True)
    sp.add_argument("--graph", required=True)

    sp = add("distinguish", cmd_distinguish, "does k-WL distinguish two graphs")
    sp.add_argument("-k", type=int, required=True)
    sp.add_argument("--a", required=True)
    sp.add_argument("--b", required=True)

    sp = add("wl-dim", cmd_wl_dim, "WL dimension within a family")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--family", default="all", help="JSON list of graphs, or 'all' for every graph of the same order")
    sp.add_argument("--kmax", type=int, default=3)

    sp = add("genus", cmd_genus, "Euler genus of a graph or an embedding")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--graph")
    g.add_argument("--embedding")

    sp = add("faces", cmd_faces, "faces of an embedding, optionally cut along a cycle")
    sp.add_argument("--embedding", required=True)
    sp.add_argument("--cut", help="comma-separated cycle to cut along")
    sp.add_argument("--out-prefix", help="write cut pieces to <prefix>_piece<i>.json")

    sp = add("necklace", cmd_necklace, "find and verify a reducing necklace")
    sp.add_argument("--embedding", required=True)

    sp = add("cut", cmd_cut, "necklace plus cut-graph components and their genera")
    sp.add_argument("--embedding", required=True)

    sp = add("cfi", cmd_cfi, "build a CFI pair over a base graph")
    sp.add_argument("--base", required=True)
    sp.add_argument("--out-prefix")
    sp.add_argument("--threshold", type=int, default=0, help="probe k-WL up to this k")

    sp = add("iso", cmd_iso, "brute-force isomorphism test")
    sp.add_argument("--a", required=True)
    sp.add_argument("--b", required=True)
    sp.add_argument("--max-order", type=int, default=64)

    sp = add("enumerate", cmd_enumerate, "all graphs of order n up to isomorphism")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--connected", action="store_true")

    sp = add("experiment", cmd_experiment, "run a named experiment")
    sp.add_argument("--name", required=True)
    sp.add_argument("--config", help="JSON object of experiment options")
    sp.add_argument("--workers", type=int, default=0)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        args.func(args)
    except _Verdict:
        return 1
    except Exception as exc:  # every failure maps to status 2 with a message
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
