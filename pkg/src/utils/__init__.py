"""
Utils package initialization.
"""

from .errors import (
    ConfigError,
    CurveError,
    EngineError,
    GeometryError,
    GifsError,
    GraphError,
    RuleError,
    SearchExhausted,
    SkeletonError,
)
from .helpers import NumericHelpers
from .logger import Logger

__all__ = [
    "Logger",
    "NumericHelpers",
    "EngineError",
    "ConfigError",
    "GeometryError",
    "SkeletonError",
    "GraphError",
    "SearchExhausted",
    "RuleError",
    "GifsError",
    "CurveError",
]
