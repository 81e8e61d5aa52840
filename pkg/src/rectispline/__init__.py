"""Rectilinear shortest paths amid circular-arc splinegon obstacles."""

__version__ = "0.1.0"

from .geom import (
    ArcEdge,
    axis_tangent_points,
    common_tangents,
    edge_line_intersections,
    l1_length_along_edge,
    tangents_point_edge,
)
from .domain import (
    Splinegon,
    SplinegonalDomain,
    ValidatedDomain,
    classify_edge,
    splinegon_extrema,
    validate_domain,
)
from .config import RunConfig, DEFAULT_CONFIG

__all__ = [
    "ArcEdge",
    "Splinegon",
    "SplinegonalDomain",
    "ValidatedDomain",
    "RunConfig",
    "DEFAULT_CONFIG",
    "axis_tangent_points",
    "common_tangents",
    "edge_line_intersections",
    "l1_length_along_edge",
    "tangents_point_edge",
    "classify_edge",
    "splinegon_extrema",
    "validate_domain",
]
