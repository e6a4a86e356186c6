"""
Geometry package initialization.
"""

from .similitude import (
    Point,
    PointIndex,
    Similitude,
    Tolerance,
    apply,
    compose,
    diameter,
    fixed_point,
    points_equal,
)

__all__ = [
    "Point",
    "PointIndex",
    "Similitude",
    "Tolerance",
    "apply",
    "compose",
    "diameter",
    "fixed_point",
    "points_equal",
]
