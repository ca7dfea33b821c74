"""Cut&Count solvers for connectivity problems on graphs with a shallow
elimination forest, in polynomial space."""

from .elimination import (
    EliminationForest,
    ForestError,
    build_centroid_forest,
    build_dfs_forest,
    build_forest_from_fvs,
    optimal_forest_small,
    parse_forest,
    serialize_forest,
    validate_forest,
)
from .engine import RunConfig, Universe, WeightFunction, sample_weights
from .graph import Graph, GraphFormatError, parse_graph, serialize_graph
from .solvers import (
    InstanceError,
    ProblemInstance,
    countc_all,
    reduce_cvc_to_st,
    solve,
    solve_cds,
    solve_coct,
    solve_cvc,
    solve_fvs,
    solve_st,
)

__version__ = "0.1.0"

__all__ = [
    "EliminationForest",
    "ForestError",
    "Graph",
    "GraphFormatError",
    "InstanceError",
    "ProblemInstance",
    "RunConfig",
    "Universe",
    "WeightFunction",
    "build_centroid_forest",
    "build_dfs_forest",
    "build_forest_from_fvs",
    "countc_all",
    "optimal_forest_small",
    "parse_forest",
    "parse_graph",
    "reduce_cvc_to_st",
    "sample_weights",
    "serialize_forest",
    "serialize_graph",
    "solve",
    "solve_cds",
    "solve_coct",
    "solve_cvc",
    "solve_fvs",
    "solve_st",
    "validate_forest",
]
