"""Randomized LP heuristic for weighted graph isomorphism.

Pipeline: spectral precheck, invariant-based sparsity masks, a consensus
splitting solver over the doubly stochastic matrices commuting with the two
adjacency operators, linear-assignment rounding with exact verification,
and independent randomized restarts.
"""

from .admm import (
    AdmmParams,
    AdmmState,
    CommutantProjector,
    Direction,
    RelaxedSolution,
    admm_solve,
    commutant_projector_mask,
    project_commutant,
    sample_direction,
)
from .assignment import hungarian_nearest_permutation, verify_permutation
from .estimator import IsomorphismSolver
from .graphs import (
    EigenGroup,
    Permutation,
    Spectrum,
    WeightedGraph,
    apply_permutation,
    erdos_renyi,
    frucht,
    grid2d,
    petersen,
    random_permute,
    spectra_equal,
    spectrum,
)
from .io import GraphFormatError, load_graph, save_graph
from .masks import MaskOptions, SparsityMask, construct_K, degree_mask, max_mask_oracle, prune, spectral_mask
from .oracle import all_isomorphisms, brute_force_isomorphism
from .pipeline import (
    SolveConfig,
    SolveReport,
    estimate_success_rate,
    solve_gip,
)

__version__ = "0.1.0"

__all__ = [
    "AdmmParams",
    "AdmmState",
    "CommutantProjector",
    "Direction",
    "EigenGroup",
    "GraphFormatError",
    "IsomorphismSolver",
    "MaskOptions",
    "Permutation",
    "RelaxedSolution",
    "SolveConfig",
    "SolveReport",
    "SparsityMask",
    "Spectrum",
    "WeightedGraph",
    "admm_solve",
    "all_isomorphisms",
    "apply_permutation",
    "brute_force_isomorphism",
    "commutant_projector_mask",
    "construct_K",
    "degree_mask",
    "erdos_renyi",
    "estimate_success_rate",
    "frucht",
    "grid2d",
    "hungarian_nearest_permutation",
    "load_graph",
    "max_mask_oracle",
    "petersen",
    "project_commutant",
    "prune",
    "random_permute",
    "sample_direction",
    "save_graph",
    "solve_gip",
    "spectra_equal",
    "spectral_mask",
    "spectrum",
    "verify_permutation",
]
