"""
Curve package initialization.
"""

from .diagnostics import (
    check_anchors,
    check_vertex_nesting,
    convergence_diagnostic,
    diagnostics_table,
    holder_diagnostic,
)
from .sampler import CurveApproximation, CurveSample, sample_curve, sample_depths, segment_count

__all__ = [
    "CurveApproximation",
    "CurveSample",
    "sample_curve",
    "sample_depths",
    "segment_count",
    "check_anchors",
    "check_vertex_nesting",
    "convergence_diagnostic",
    "diagnostics_table",
    "holder_diagnostic",
]
