"""Exact solver for the bipartite (two-layer) crossing number.

Build a graph, then ask for a decision at a crossing budget or for the
exact optimum:

    >>> import bicross
    >>> c4 = bicross.build_graph(2, 2, [(0, 0), (0, 1), (1, 0), (1, 1)])
    >>> bicross.bcr_exact(c4).optimum
    1
"""

from .drawing import (
    Drawing,
    Layout,
    crossing_number_fast,
    crossing_number_naive,
    drawing_from_ranks,
    identity_drawing,
    layout_from_sequence,
    validate_layout,
)
from .enumeration import (
    CandidateEncoding,
    SpineMap,
    build_spine,
    count_bound,
    decode_layout,
    encoding_from_layout,
    enumerate_candidates,
    gap_budget,
    verify_spine,
)
from .graph import (
    BipartiteGraph,
    GraphComponent,
    GraphError,
    MergeResult,
    SiblingPair,
    Side,
    VertexId,
    build_graph,
    connected_components,
    crossing_lower_bound,
    find_sibling_pairs,
    is_caterpillar_forest,
    is_connected,
    merge_sibling_leaves,
    sibling_merge,
    split_components,
)
from .limits import DEFAULT_LIMITS, Limits, ResourceLimitError
from .solver import (
    CensusResult,
    SolveReport,
    SolveStats,
    bcr_bruteforce,
    bcr_component,
    bcr_decide,
    bcr_exact,
    census,
)

__version__ = "0.1.0"

__all__ = [
    "BipartiteGraph",
    "CandidateEncoding",
    "CensusResult",
    "DEFAULT_LIMITS",
    "Drawing",
    "GraphComponent",
    "GraphError",
    "Layout",
    "Limits",
    "MergeResult",
    "ResourceLimitError",
    "SiblingPair",
    "Side",
    "SolveReport",
    "SolveStats",
    "SpineMap",
    "VertexId",
    "bcr_bruteforce",
    "bcr_component",
    "bcr_decide",
    "bcr_exact",
    "build_graph",
    "build_spine",
    "census",
    "connected_components",
    "count_bound",
    "crossing_lower_bound",
    "crossing_number_fast",
    "crossing_number_naive",
    "decode_layout",
    "drawing_from_ranks",
    "encoding_from_layout",
    "enumerate_candidates",
    "find_sibling_pairs",
    "gap_budget",
    "identity_drawing",
    "is_caterpillar_forest",
    "is_connected",
    "layout_from_sequence",
    "merge_sibling_leaves",
    "sibling_merge",
    "split_components",
    "validate_layout",
    "verify_spine",
    "__version__",
]
