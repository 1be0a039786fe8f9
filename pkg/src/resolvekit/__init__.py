"""Exact metric and edge metric dimension for convex polytope ladder graphs."""

from .graph import (
    DistanceMatrix,
    DisconnectedGraphError,
    Edge,
    Graph,
    GraphError,
    VertexLabel,
    all_pairs_distances,
    build_graph,
    edge_code,
    is_connected,
    vertex_code,
    vertex_edge_distance,
)
from .families import FamilySpec, face_census, generate

__version__ = "0.1.0"
