"""Ubiquity of finite hypergraphs with boundary among uniform spanning forest components."""
from .catalog import builtin_examples, resolve_builtin
from .classify import (
    DimensionVerdict,
    TreeCriterionReport,
    bordered_zero_subhypergraphs,
    classify_faithful,
    classify_ubiquitous,
    critical_dimensions,
    is_d_basic,
    tree_criterion,
)
from .errors import (
    BadDimension,
    BoundaryCollision,
    DanglingIncidence,
    DuplicateId,
    EdgeWithNoVertex,
    EmptyBoundary,
    HypergraphError,
    InconclusiveAtCap,
    MissingCap,
    NotAForest,
    NotAGraph,
    OrphanEdge,
    ParseError,
    TooLarge,
    UsfLabError,
)
from .formats import load_hypergraph, parse_hypergraph_json, parse_hypergraph_text, to_json_dict, to_text
from .hypergraph import (
    EdgePartition,
    HypergraphWithBoundary,
    SubhypergraphSelector,
    VertexMergePlan,
    coarsen,
    enumerate_edge_partitions,
    enumerate_subhypergraphs,
    enumerate_vertex_merge_plans,
    is_bordered,
    is_full,
    is_refinement,
    is_subordinate,
    isomorphic,
    materialize_subhypergraph,
    quotient,
)
from .weights import (
    MinMaxSolution,
    WeightReport,
    d_optimal_coarsening,
    eta,
    eta_hat,
    is_buoyant,
    max_min,
    min_max,
    weight_report,
)

__version__ = "0.1.0"
