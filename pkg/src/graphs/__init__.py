"""
Graphs package initialization.
"""

from .edges import AbstractEdge, EdgePath, LabeledEdge, affine_copy, build_loop
from .induced import InducedGraph, OrientationVector, cell_loop, induced_graph
from .partition import (
    OrientationResult,
    Partition,
    PartitionSearch,
    Verdict,
    enumerate_consistent_partitions,
    find_consistent_partition,
    is_consistent,
    is_partition_of,
    reverse_partition,
    search_orientation,
)

__all__ = [
    "AbstractEdge",
    "EdgePath",
    "LabeledEdge",
    "affine_copy",
    "build_loop",
    "InducedGraph",
    "OrientationVector",
    "cell_loop",
    "induced_graph",
    "OrientationResult",
    "Partition",
    "PartitionSearch",
    "Verdict",
    "enumerate_consistent_partitions",
    "find_consistent_partition",
    "is_consistent",
    "is_partition_of",
    "reverse_partition",
    "search_orientation",
]
