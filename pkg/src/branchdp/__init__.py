"""Branch-decomposition dynamic programming toolkit."""

from .graphs import (ColoredGraph, Graph, RequestSet, all_zero,
                     colors_compatible, graph_from_edges, grid)
from .embeddings import EulerReport, RotationSystem, euler_check, trace_faces
from .decomp import (BranchDecomposition, RootedBranchDecomposition,
                     TreeDecomposition, build_branch_decomposition,
                     check_sc_candidate, check_width_relation, middle_sets,
                     min_fill_tree_decomposition, root_decomposition,
                     validate_tree_decomposition)
from .noncross import (catalan, enumerate_noncrossing_partitions,
                       enumerate_noncrossing_perfect_matchings,
                       is_noncrossing_matching)
from .cyclepack import max_cycle_packing, solve_cycle_packing
from .mdp import solve_disjoint_paths, solve_mdp
from .oracle import (HittingSetInstance, brute_3coloring, brute_cycle_packing,
                     brute_hitting_set, brute_mono_disjoint_paths,
                     verify_witness)

__all__ = [
    "ColoredGraph", "Graph", "RequestSet", "all_zero", "colors_compatible",
    "graph_from_edges", "grid", "EulerReport", "RotationSystem", "euler_check",
    "trace_faces", "BranchDecomposition", "RootedBranchDecomposition",
    "TreeDecomposition", "build_branch_decomposition", "check_sc_candidate",
    "check_width_relation", "middle_sets", "min_fill_tree_decomposition",
    "root_decomposition", "validate_tree_decomposition", "catalan",
    "enumerate_noncrossing_partitions",
    "enumerate_noncrossing_perfect_matchings", "is_noncrossing_matching",
    "max_cycle_packing", "solve_cycle_packing", "solve_disjoint_paths",
    "solve_mdp", "HittingSetInstance", "brute_3coloring",
    "brute_cycle_packing", "brute_hitting_set", "brute_mono_disjoint_paths",
    "verify_witness",
]
