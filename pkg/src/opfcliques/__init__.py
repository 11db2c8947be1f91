"""Clique decompositions of OPF relaxation sparsity patterns.

Chordal extensions via elimination orderings, maximal cliques and clique
trees, complex/real pattern conversion, and clique combination rounds
that trade extra fill for fewer linking constraints.
"""

from .decomposition import (
    CliqueList,
    CliqueTree,
    DecompositionStats,
    build_clique_tree,
    count_linking_constraints,
    decompose,
    decomposition_stats,
    maximal_cliques,
    realify_decomposition,
    satisfies_rip,
)
from .estimator import CliqueDecomposer, check_pattern
from .exceptions import ConfigError, InvalidPlan, MalformedInput
from .graph import ChordalExtension, Ordering, SparsityGraph, induced_neighbors, is_chordal, verify_peo
from .merge import MergeModel, MergePlan, apply_merge, merge_rounds, solve_merge
from .network import Branch, NetworkTopology, load_topology, parse_edge_list, parse_matpower
from .ordering import (
    OrderingStrategy,
    chordal_extension,
    order_amd,
    order_max_degree,
    order_min_degree,
    order_random,
    symbolic_elimination,
)
from .patterns import build_complex_pattern, realify_clique, realify_extension, realify_graph
from .pipeline import PipelineConfig, Report, build_report, compare, compare_reports, export_blocks, run_pipeline

__version__ = "0.1.0"

__all__ = [
    "Branch", "ChordalExtension", "CliqueDecomposer", "CliqueList", "CliqueTree",
    "ConfigError", "DecompositionStats", "InvalidPlan", "MalformedInput", "MergeModel",
    "MergePlan", "NetworkTopology", "Ordering", "OrderingStrategy", "PipelineConfig",
    "Report", "SparsityGraph", "apply_merge", "load_topology", "build_clique_tree", "build_complex_pattern",
    "build_report", "check_pattern", "chordal_extension", "compare", "count_linking_constraints",
    "decompose", "decomposition_stats", "export_blocks", "induced_neighbors", "is_chordal",
    "maximal_cliques", "merge_rounds", "order_amd", "order_max_degree", "order_min_degree",
    "order_random", "parse_edge_list", "parse_matpower", "realify_clique",
    "realify_decomposition", "realify_extension", "realify_graph", "run_pipeline", "compare_reports",
    "satisfies_rip", "solve_merge", "symbolic_elimination", "verify_peo",
]
