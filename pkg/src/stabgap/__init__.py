"""Coset-graph spectra workbench.

Builds the bipartite multigraph attached to a vertex-transitive group
action on a graph, computes its singular values, and verifies the norm
and convolution identities connecting the second singular value to the
order of a vertex stabilizer.
"""

from .errors import ConvergenceError, SizeLimitError, StructureError
from .perms import Permutation
from .groups import (
    ConnectionSet,
    DEFAULT_ELEMENT_CAP,
    PermutationGroup,
    double_coset,
    double_coset_representatives,
    is_inverse_closed,
)
from .graphs import (
    CosetGraphSpec,
    LocalActionReport,
    SabidussiResult,
    SimpleGraph,
    TransitiveCase,
    build_coset_graph,
    extract_connection_set,
    local_action,
    make_transitive_case,
    preserves_edges,
    sabidussi_isomorphism,
)
from .spectral import (
    BipartiteAdjacency,
    DENSE_SIZE_CAP,
    ReconstructionReport,
    SpectralSummary,
    build_bipartite,
    jacobi_eigensolve,
    lambda1_power_iteration,
    lambda2_power_iteration,
    reconstruction_report,
    singular_values,
    top_value_matches_degree,
    zero_sum_contraction_ok,
)
from .harmonic import (
    GroupFunction,
    NormIdentityReport,
    convolution_matches_matrix,
    convolve,
    group_point_mass,
    indicator,
    norm_identity_trials,
    point_mass,
    uniform_distribution,
    uniform_on,
)
from .verify import (
    BoundReport,
    CauchySchwarzResult,
    ChainDiagnostics,
    bound_report,
    cauchy_schwarz_step,
    evaluate_chain,
)
from .casefile import CaseOptions, CaseParseError, CaseSpec, load_case, parse_case, realize_case
from .catalog import FAMILY_NAMES, builtin_cases
from .pipeline import (
    AnalyzeOptions,
    CaseAnalysisError,
    CaseReport,
    CatalogResult,
    CSV_COLUMNS,
    analyze_case,
    analyze_many,
    case_seed,
)

__all__ = [
    "AnalyzeOptions",
    "BipartiteAdjacency",
    "BoundReport",
    "CSV_COLUMNS",
    "CaseAnalysisError",
    "CaseOptions",
    "CaseParseError",
    "CaseReport",
    "CaseSpec",
    "CatalogResult",
    "CauchySchwarzResult",
    "ChainDiagnostics",
    "ConnectionSet",
    "ConvergenceError",
    "CosetGraphSpec",
    "DEFAULT_ELEMENT_CAP",
    "DENSE_SIZE_CAP",
    "FAMILY_NAMES",
    "GroupFunction",
    "LocalActionReport",
    "NormIdentityReport",
    "Permutation",
    "PermutationGroup",
    "ReconstructionReport",
    "SabidussiResult",
    "SimpleGraph",
    "SizeLimitError",
    "SpectralSummary",
    "StructureError",
    "TransitiveCase",
    "analyze_case",
    "analyze_many",
    "bound_report",
    "build_bipartite",
    "build_coset_graph",
    "builtin_cases",
    "case_seed",
    "cauchy_schwarz_step",
    "convolution_matches_matrix",
    "convolve",
    "double_coset",
    "double_coset_representatives",
    "evaluate_chain",
    "extract_connection_set",
    "group_point_mass",
    "indicator",
    "is_inverse_closed",
    "jacobi_eigensolve",
    "lambda1_power_iteration",
    "lambda2_power_iteration",
    "load_case",
    "local_action",
    "make_transitive_case",
    "norm_identity_trials",
    "parse_case",
    "point_mass",
    "preserves_edges",
    "realize_case",
    "reconstruction_report",
    "sabidussi_isomorphism",
    "singular_values",
    "top_value_matches_degree",
    "uniform_distribution",
    "uniform_on",
    "zero_sum_contraction_ok",
]

__version__ = "0.1.0"
