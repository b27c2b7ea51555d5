"""Discrete topological graphs, factor maps and their finite-dimensional algebras."""
from topgraph.cardinal import OMEGA, Cardinal, card_sum, is_finite
from topgraph.errors import TopGraphError
from topgraph.graph import (
    EdgeClass,
    Path,
    PathEnumeration,
    TopGraph,
    VertexClassification,
    classify_vertices,
    enumerate_paths,
    is_topologically_free,
    loops,
    path_count_from,
    validate_graph,
)
from topgraph.factor import (
    FactorMap,
    compose,
    identity_map,
    is_regular,
    is_vertex_surjective,
    lift_edge,
    validate_factor_map,
)
from topgraph.algebra import AlgebraExpr, dimension, direct_sum, identify_finite_dim, tensor_matrix

__version__ = "0.1.0"

__all__ = [
    "OMEGA",
    "Cardinal",
    "card_sum",
    "is_finite",
    "TopGraphError",
    "EdgeClass",
    "Path",
    "PathEnumeration",
    "TopGraph",
    "VertexClassification",
    "classify_vertices",
    "enumerate_paths",
    "is_topologically_free",
    "loops",
    "path_count_from",
    "validate_graph",
    "FactorMap",
    "compose",
    "identity_map",
    "is_regular",
    "is_vertex_surjective",
    "lift_edge",
    "validate_factor_map",
    "AlgebraExpr",
    "dimension",
    "direct_sum",
    "identify_finite_dim",
    "tensor_matrix",
]
