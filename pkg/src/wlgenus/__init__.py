"""Weisfeiler-Leman refinement, counting logic and surface-embedded graph tools."""

from wlgenus.cfi import CFIPair, cfi_pair, cfi_threshold
from wlgenus.decomp import (
    SPS,
    CutResult,
    Necklace,
    NecklaceError,
    canonical_sps,
    cut_graph,
    find_reducing_necklace,
    is_patch,
    verify_necklace,
)
from wlgenus.experiments import Report, run_experiment
from wlgenus.graph import (
    Bridge,
    ColouredGraph,
    IndividualColour,
    Multiset,
    connected_components,
    find_bridges,
    individualise,
    is_k_connected,
    quotient_contract,
)
from wlgenus.logic import bijective_pebble_game, eval_formula, evaluate_table, parse, width
from wlgenus.oracles import automorphism_orbits, brute_force_isomorphic, enumerate_graphs, find_isomorphism
from wlgenus.surface import (
    EmbeddedGraph,
    GenusBudgetExceeded,
    cut_along_cycle,
    embedding_euler_genus,
    graph_euler_genus,
    is_contractible,
    minimum_genus_embedding,
    shortest_noncontractible_cycle,
    trace_faces,
)
from wlgenus.wl import (
    StableColouring,
    atomic_type,
    distinguishes,
    determines_orbits_check,
    identifies_within,
    wl_dimension_within,
    wl_refine,
)

__all__ = [
    "Bridge",
    "CFIPair",
    "ColouredGraph",
    "CutResult",
    "EmbeddedGraph",
    "GenusBudgetExceeded",
    "IndividualColour",
    "Multiset",
    "Necklace",
    "NecklaceError",
    "Report",
    "SPS",
    "StableColouring",
    "atomic_type",
    "automorphism_orbits",
    "bijective_pebble_game",
    "brute_force_isomorphic",
    "canonical_sps",
    "cfi_pair",
    "cfi_threshold",
    "connected_components",
    "cut_along_cycle",
    "cut_graph",
    "determines_orbits_check",
    "distinguishes",
    "embedding_euler_genus",
    "enumerate_graphs",
    "eval_formula",
    "evaluate_table",
    "find_bridges",
    "find_isomorphism",
    "find_reducing_necklace",
    "graph_euler_genus",
    "identifies_within",
    "individualise",
    "is_contractible",
    "is_k_connected",
    "is_patch",
    "minimum_genus_embedding",
    "parse",
    "quotient_contract",
    "run_experiment",
    "shortest_noncontractible_cycle",
    "trace_faces",
    "verify_necklace",
    "width",
    "wl_dimension_within",
    "wl_refine",
]

__version__ = "0.1.0"
