"""Acyclicity bounds for digraphs without short directed cycles.

For a digraph with no directed cycle of length at most 3, the minimum
number of arcs whose deletion leaves it acyclic never exceeds the number
of nonadjacent vertex pairs; this package builds the certificates behind
that bound, the stronger half-count bound on two structured families, the
grid inequality supporting the matching analysis, and a scan harness that
hunts for counterexamples to the half-count conjecture in general.
"""

from .circular import (
    BlockStructure,
    CircularOrder,
    CutIndex,
    IndexSets,
    TransitiveTournament,
    best_cut,
    circular_feedback,
    cut_arcs,
    generate,
    index_sets,
    maximal_completion,
    recognize_structure,
    verify_circular_interval,
)
from .decompose import (
    PivotSplit,
    PivotStats,
    choose_pivot,
    pivot_feedback_size,
    theorem1_feedback,
    two_path_counts,
)
from .digraph import (
    Arc,
    Digraph,
    FeedbackCertificate,
    NonadjacencyReport,
    find_short_cycle,
    format_edge_list,
    gamma,
    gamma_count,
    is_acyclic,
    is_k_free,
    parse_edge_list,
    read_edge_list,
    verify_feedback_set,
)
from .errors import (
    EmptyInputError,
    GraphInputError,
    MalformedCertificateError,
    NotThreeFreeError,
    PartitionError,
    ShapeError,
    SizeLimitError,
    StructureError,
    StructureViolationError,
    TrifreeError,
)
from .exact import (
    DP_VERTEX_LIMIT,
    BetaResult,
    beta_exact,
    beta_oracle_permutations,
    beta_value,
)
from .four_functions import (
    FourFunctionsVerdict,
    GridFunctions,
    QuadCheck,
    check_hypothesis1,
    dominates,
    format_grid,
    grid_from_matching,
    hypothesis1_violation,
    parse_grid,
    quad_check,
    verify_four_functions,
    witness_points,
)
from .harness import (
    ScanReport,
    ViolationRecord,
    WitnessRecord,
    conjecture_scan,
    enumerate_3free,
    extremal_family,
    merge_reports,
    random_3free,
    random_grid_instance,
    random_two_clique,
)
from .two_cliques import (
    CliquePartition,
    Cross,
    CrossGraphResult,
    MatchingAndCover,
    build_cross_graph,
    cross_analysis,
    max_matching_and_cover,
    order_cliques,
    two_cliques_feedback,
    witness_sets,
)

__version__ = "0.1.0"

__all__ = [
    "Arc",
    "BetaResult",
    "BlockStructure",
    "CircularOrder",
    "CliquePartition",
    "Cross",
    "CrossGraphResult",
    "CutIndex",
    "DP_VERTEX_LIMIT",
    "Digraph",
    "EmptyInputError",
    "FeedbackCertificate",
    "FourFunctionsVerdict",
    "GraphInputError",
    "GridFunctions",
    "IndexSets",
    "MalformedCertificateError",
    "MatchingAndCover",
    "NonadjacencyReport",
    "NotThreeFreeError",
    "PartitionError",
    "PivotSplit",
    "PivotStats",
    "QuadCheck",
    "ScanReport",
    "ShapeError",
    "SizeLimitError",
    "StructureError",
    "StructureViolationError",
    "TransitiveTournament",
    "TrifreeError",
    "ViolationRecord",
    "WitnessRecord",
    "best_cut",
    "beta_exact",
    "beta_oracle_permutations",
    "beta_value",
    "build_cross_graph",
    "check_hypothesis1",
    "choose_pivot",
    "circular_feedback",
    "conjecture_scan",
    "cross_analysis",
    "cut_arcs",
    "dominates",
    "enumerate_3free",
    "extremal_family",
    "find_short_cycle",
    "format_edge_list",
    "format_grid",
    "gamma",
    "gamma_count",
    "generate",
    "grid_from_matching",
    "hypothesis1_violation",
    "index_sets",
    "is_acyclic",
    "is_k_free",
    "max_matching_and_cover",
    "maximal_completion",
    "merge_reports",
    "order_cliques",
    "parse_edge_list",
    "parse_grid",
    "pivot_feedback_size",
    "quad_check",
    "random_3free",
    "random_grid_instance",
    "random_two_clique",
    "read_edge_list",
    "recognize_structure",
    "theorem1_feedback",
    "two_cliques_feedback",
    "two_path_counts",
    "verify_circular_interval",
    "verify_feedback_set",
    "verify_four_functions",
    "witness_points",
    "witness_sets",
]
