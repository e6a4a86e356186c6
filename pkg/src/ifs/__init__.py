"""
IFS package initialization.
"""

from .system import (
    HataGraph,
    IfsSystem,
    Skeleton,
    check_level_one_separation,
    hata_graph,
    similarity_dimension,
    validate_skeleton,
)

__all__ = [
    "HataGraph",
    "IfsSystem",
    "Skeleton",
    "check_level_one_separation",
    "hata_graph",
    "similarity_dimension",
    "validate_skeleton",
]
