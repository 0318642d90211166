"""Multigraph homomorphism densities into weighted targets, moment
matrices of graph parameters, and the rank growth they certify — all in
exact rational arithmetic, with float fast paths where they are safe.

The package revolves around three object kinds:

* patterns: :class:`Multigraph` (node-labeled multigraphs, no loops),
* targets: :class:`WeightedGraph`, :class:`RandomWeightedGraph`,
  :class:`StepGraphon`,
* parameters: hom / density functionals of patterns, and their
  connection-matrix sections.
"""

from ._kernels import backend
from .errors import GraphmomentsError, GuardError, InputError, LabelMismatchError
from .exactla import (ExactMatrix, PsdResult, ldl_psd, psd_check, rank_exact,
                      rank_float, solve_exact)
from .graphs import (Multigraph, are_isomorphic, canonical_code, complete,
                     complete_bipartite, cycle, disjoint_union, edgeless,
                     enumerate_k_labeled, enumerate_unlabeled,
                     eulerian_orientation_count, glue_product, graph_from_json,
                     graph_to_json, labeled_pair_power, labeled_path_of_length,
                     labeled_star_pair, multi_edge, path, simple_glue_product,
                     single_node, subdivide)
from .homs import (GraphParameter, QuantumGraph, density_parameter,
                   evaluate_quantum, hom, hom_parameter, hom_rw, inj, t,
                   t_float, t_inj, t_rw, table_parameter)
from .connection import (B_matrix, C_matrix, DimEstimate, E_matrix,
                         connection_submatrix, estimate_dim,
                         special_matrix_float)
from .moments import (FiniteSupportMeasure, MomentSequence, finite_difference,
                      hankel_matrix, hankel_psd_rank, hausdorff_check,
                      induced_nonnegativity, recover_finite_support)
from .rankgrowth import (AValue, BoundCheck, GrowthReport, automorphisms,
                         classify_growth, compute_A, count_map_orbits,
                         dim_Pn_exact, grid_search_A, twin_reduce,
                         verify_rank_bounds)
from .sampling import (ConvergenceResult, TavolsagCheck, convergence_experiment,
                       hom_dense, inj_dense, sample_dense, sample_zn, t_dense,
                       t_inj_dense, verify_tavolsag)
from .spectral import (TwRank, check_subdivision, compose_step,
                       cycle_density_spectral, distinct_eigenvalues,
                       eigenvalues_step, refine_to_common, t_lowrank,
                       tw_rank_bounds)
from .targets import (NAMED_KERNELS, RandomWeightedGraph, StepGraphon,
                      WeightedGraph, coin_node, constant_target, grid_graphon,
                      target_from_json)

__version__ = "0.1.0"

__all__ = [
    "AValue", "B_matrix", "BoundCheck", "C_matrix", "ConvergenceResult",
    "DimEstimate", "E_matrix", "ExactMatrix", "FiniteSupportMeasure",
    "GraphParameter", "GraphmomentsError", "GrowthReport", "GuardError",
    "InputError", "LabelMismatchError", "MomentSequence", "Multigraph",
    "NAMED_KERNELS", "PsdResult", "QuantumGraph", "RandomWeightedGraph",
    "StepGraphon", "TavolsagCheck", "TwRank", "WeightedGraph",
    "are_isomorphic", "automorphisms", "backend", "canonical_code",
    "check_subdivision", "classify_growth", "coin_node", "complete",
    "complete_bipartite", "compose_step", "compute_A", "connection_submatrix",
    "constant_target", "convergence_experiment", "count_map_orbits", "cycle",
    "cycle_density_spectral", "density_parameter", "dim_Pn_exact",
    "disjoint_union", "distinct_eigenvalues", "edgeless", "eigenvalues_step",
    "enumerate_k_labeled", "enumerate_unlabeled", "estimate_dim",
    "eulerian_orientation_count", "evaluate_quantum", "finite_difference",
    "glue_product", "graph_from_json", "graph_to_json", "grid_graphon",
    "grid_search_A", "hankel_matrix", "hankel_psd_rank", "hausdorff_check",
    "hom", "hom_dense", "hom_parameter", "hom_rw", "induced_nonnegativity",
    "inj", "inj_dense", "labeled_pair_power", "labeled_path_of_length",
    "labeled_star_pair", "ldl_psd", "multi_edge", "path", "psd_check",
    "rank_exact", "rank_float", "recover_finite_support", "refine_to_common",
    "sample_dense", "sample_zn", "simple_glue_product", "single_node",
    "solve_exact", "special_matrix_float", "subdivide", "t", "t_dense",
    "t_float", "t_inj", "t_inj_dense", "t_lowrank", "t_rw", "table_parameter",
    "target_from_json", "tw_rank_bounds", "twin_reduce", "verify_rank_bounds",
    "verify_tavolsag",
]
