"""Distance-sensitive point location for planar polygonal subdivisions.

The package decomposes subdivision faces into convex regions whose area
grows with the squared distance to the face boundary, builds weight-biased
point-location structures on top of them, and ships a benchmark harness
that measures the resulting query-cost laws.
"""

from .geometry import (
    BOUNDARY,
    COLLINEAR,
    EPS_GEOM,
    INSIDE,
    LEFT,
    OUTSIDE,
    RIGHT,
    GeneralPositionError,
    GeometryError,
    Point,
    PolygonError,
    Segment,
    SimplePolygon,
    Subdivision,
    SubdivisionError,
    contains,
    dist_to_boundary,
    orient,
    signed_area,
    validate_general_position,
)

__all__ = [
    "BOUNDARY",
    "COLLINEAR",
    "EPS_GEOM",
    "INSIDE",
    "LEFT",
    "OUTSIDE",
    "RIGHT",
    "GeneralPositionError",
    "GeometryError",
    "Point",
    "PolygonError",
    "Segment",
    "SimplePolygon",
    "Subdivision",
    "SubdivisionError",
    "contains",
    "dist_to_boundary",
    "orient",
    "signed_area",
    "validate_general_position",
]

__version__ = "0.1.0"
