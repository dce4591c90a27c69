"""Random-walk absorption times and Dirichlet-Fiedler vectors for local graph clustering."""

__version__ = "0.1.0"

from .approx import absorption_rank1, absorption_series, compare, spectrum_profile
from .classify import (CutResult, DegenerateScoresError, bipartition_by_median, cut_capacity,
                       local_cluster, normalized_cut, two_means_1d)
from .descent import DescentParams, default_params, descend, gradient, objective
from .estimators import AbsorptionTimes, LocalClusterer, check_graph
from .graph import (Graph, GroundTruth, builtin_karate, gen_caveman, gen_gnp, is_bipartite,
                    is_connected, load_edge_list)
from .markov import (absorbing_chain, absorption_exact, absorption_matrix, lazy,
                     simulate_absorption, transition_matrix)
from .spectral import (dirichlet_fiedler_exact, eig_symmetric, global_fiedler, laplacian,
                       normalized_laplacian, spectrum_identity_check)

__all__ = [
    "AbsorptionTimes", "CutResult", "DegenerateScoresError", "DescentParams", "Graph",
    "GroundTruth", "LocalClusterer", "absorbing_chain", "absorption_exact",
    "absorption_matrix", "absorption_rank1", "absorption_series", "bipartition_by_median",
    "builtin_karate", "check_graph", "compare", "cut_capacity", "default_params", "descend",
    "dirichlet_fiedler_exact", "eig_symmetric", "gen_caveman", "gen_gnp", "global_fiedler",
    "gradient", "is_bipartite", "is_connected", "laplacian", "lazy", "load_edge_list",
    "local_cluster", "normalized_cut", "normalized_laplacian", "objective",
    "simulate_absorption", "spectrum_identity_check", "spectrum_profile", "transition_matrix",
    "two_means_1d",
]
