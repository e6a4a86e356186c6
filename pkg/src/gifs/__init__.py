"""
GIFS package initialization.
"""

from .induced_gifs import Bridge, InducedGifs, induce_gifs
from .linearity import (
    ChainReport,
    ChainViolation,
    GifsPath,
    LinearityReport,
    PureCellReport,
    check_chain_condition,
    check_linearity,
    check_pure_cell_disjointness,
    enumerate_paths,
    expand_set_equation,
)
from .spectral import (
    AssociateMatrix,
    MeasureWeights,
    PerronEstimate,
    SpectralCertificate,
    associate_matrix,
    measure_weights,
    perron_iteration,
    simplified_matrix,
    spectral_certify,
)

__all__ = [
    "Bridge",
    "InducedGifs",
    "induce_gifs",
    "ChainReport",
    "ChainViolation",
    "GifsPath",
    "LinearityReport",
    "PureCellReport",
    "check_chain_condition",
    "check_linearity",
    "check_pure_cell_disjointness",
    "enumerate_paths",
    "expand_set_equation",
    "AssociateMatrix",
    "MeasureWeights",
    "PerronEstimate",
    "SpectralCertificate",
    "associate_matrix",
    "measure_weights",
    "perron_iteration",
    "simplified_matrix",
    "spectral_certify",
]
