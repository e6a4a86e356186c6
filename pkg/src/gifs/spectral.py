"""
Associate matrix M(s), spectral certificate and Perron weights of an induced GIFS.

Rows are source states, columns target states: entry (u, v) = Σ_{bridges u→v} c^s. Every state
receives one bridge per map, so at the similarity dimension every column sums to 1.
"""

from dataclasses import dataclass, field
from typing import Optional

import networkx as nx
import numpy as np

from src.config import Config
from src.graphs import AbstractEdge
from src.utils import GifsError, Logger

from .induced_gifs import InducedGifs

logger = Logger.get_logger(__name__)

RADIUS_TOLERANCE = 1e-9
COLUMN_SUM_TOLERANCE = 1e-12
VECTOR_TOLERANCE = 1e-14


@dataclass(frozen=True)
class AssociateMatrix:
    states: tuple[AbstractEdge, ...]
    values: np.ndarray
    exponent: float

    @property
    def column_sums(self) -> np.ndarray:
        return self.values.sum(axis=0)

    @property
    def row_sums(self) -> np.ndarray:
        return self.values.sum(axis=1)


@dataclass(frozen=True)
class PerronEstimate:
    """Power-iteration result with Collatz-Wielandt bounds lower <= ρ <= upper."""

    radius: float
    lower: float
    upper: float
    vector: np.ndarray
    iterations: int
    converged: bool


def associate_matrix(g: InducedGifs, s: float) -> AssociateMatrix:
    """
    M(s) over all states of the GIFS.

    Args:
        g: Induced GIFS
        s: Exponent >= 0

    Returns:
        AssociateMatrix
    """
    index = g.state_index
    values = np.zeros((len(g.states), len(g.states)))
    for bridge in g.all_bridges():
        values[index[bridge.source], index[bridge.target]] += g.ratio(bridge) ** s
    return AssociateMatrix(g.states, values, s)


def simplified_matrix(g: InducedGifs, s: float) -> AssociateMatrix:
    """
    M(s) of the simplified GIFS where E_{v_j} and E_{v_j^-1} are identified (m × m).
    """
    m = g.skeleton.m
    values = np.zeros((m, m))
    for state in g.rule.positive_states:
        for bridge in g.outgoing(state):
            values[state.index - 1, bridge.target.index - 1] += g.ratio(bridge) ** s
    return AssociateMatrix(g.rule.positive_states, values, s)


def perron_iteration(
    values: np.ndarray, max_iterations: Optional[int] = None
) -> PerronEstimate:
    """
    Lazy power iteration x ← (M + I)x / 2 from the all-ones vector.

    Args:
        values: Square nonnegative matrix
        max_iterations: Iteration cap (Config.POWER_ITERATIONS by default)

    Returns:
        PerronEstimate
    """
    max_iterations = max_iterations or Config.POWER_ITERATIONS
    n = values.shape[0]
    lazy = 0.5 * (values + np.eye(n))
    x = np.ones(n)
    converged = False
    iterations = 0
    for iterations in range(1, max_iterations + 1):
        y = lazy @ x
        top = y.max()
        if top <= 0:
            break
        y /= top
        if np.max(np.abs(y - x)) <= VECTOR_TOLERANCE:
            x = y
            converged = True
            break
        x = y

    image = values @ x
    support = x > 1e-12 * x.max() if x.max() > 0 else np.zeros(n, dtype=bool)
    if not support.any():
        return PerronEstimate(0.0, 0.0, 0.0, x, iterations, converged)
    ratios = image[support] / x[support]
    lower, upper = float(ratios.min()), float(ratios.max())
    return PerronEstimate(0.5 * (lower + upper), lower, upper, x, iterations, converged)


@dataclass(frozen=True)
class SpectralCertificate:
    dimension: float
    spectral_radius: float
    radius_bounds: tuple[float, float]
    column_sum_min: float
    column_sum_max: float
    simplified_radius: float
    strongly_connected: bool
    conditional: bool = False
    simplified: Optional[AssociateMatrix] = field(default=None, compare=False)


def _simplified_digraph(matrix: AssociateMatrix) -> nx.DiGraph:
    graph = nx.DiGraph()
    m = matrix.values.shape[0]
    graph.add_nodes_from(range(m))
    rows, cols = np.nonzero(matrix.values)
    graph.add_edges_from(zip(rows.tolist(), cols.tolist()))
    return graph


def spectral_certify(g: InducedGifs, primitive: bool = True) -> SpectralCertificate:
    """
    Certify ρ(M(s)) = 1 and unit column sums at the similarity dimension, for both the full and
    the simplified GIFS, and strong connectivity of the simplified digraph.

    Args:
        g: Induced GIFS
        primitive: Whether the coarse substitution is primitive (else the certificate is
            marked conditional)

    Returns:
        SpectralCertificate

    Raises:
        GifsError: SPECTRAL_MISMATCH or NOT_STRONGLY_CONNECTED
    """
    s = g.dimension
    matrix = associate_matrix(g, s)
    sums = matrix.column_sums
    col_min, col_max = float(sums.min()), float(sums.max())
    if max(abs(col_min - 1.0), abs(col_max - 1.0)) > COLUMN_SUM_TOLERANCE:
        raise GifsError(
            "Column sums of M(s) differ from 1",
            code="SPECTRAL_MISMATCH",
            details={"column_sum_min": col_min, "column_sum_max": col_max},
        )

    estimate = perron_iteration(matrix.values)
    simplified = simplified_matrix(g, s)
    simple_estimate = perron_iteration(simplified.values)
    for label, value in (("full", estimate), ("simplified", simple_estimate)):
        if max(abs(value.lower - 1.0), abs(value.upper - 1.0)) > RADIUS_TOLERANCE:
            raise GifsError(
                f"Spectral radius of the {label} M(s) is not 1",
                code="SPECTRAL_MISMATCH",
                details={"matrix": label, "lower": value.lower, "upper": value.upper},
            )

    strongly_connected = nx.is_strongly_connected(_simplified_digraph(simplified))
    if not strongly_connected:
        raise GifsError(
            "Simplified GIFS digraph is not strongly connected",
            code="NOT_STRONGLY_CONNECTED",
            details={"states": [state.label() for state in simplified.states]},
        )

    if not primitive:
        Logger.log_certificate_issue(logger, "CONDITIONAL_SPECTRAL", {"primitive": False})
    return SpectralCertificate(
        dimension=s,
        spectral_radius=estimate.radius,
        radius_bounds=(estimate.lower, estimate.upper),
        column_sum_min=col_min,
        column_sum_max=col_max,
        simplified_radius=simple_estimate.radius,
        strongly_connected=strongly_connected,
        conditional=not primitive,
        simplified=simplified,
    )


@dataclass(frozen=True)
class MeasureWeights:
    """Right Perron vector h = M(s)h normalized so that Σ_j h_{v_j} = 1."""

    states: tuple[AbstractEdge, ...]
    values: np.ndarray
    residual: float
    iterations: int
    normalization: str = "sum of h over v_1..v_m equals 1"

    def as_dict(self) -> dict:
        return {state: float(value) for state, value in zip(self.states, self.values)}

    def of(self, state: AbstractEdge) -> float:
        return float(self.values[self.states.index(state)])


def measure_weights(g: InducedGifs) -> MeasureWeights:
    """
    Positive eigenvector of M(s) for eigenvalue 1.

    Raises:
        GifsError: NONCONVERGENT after Config.POWER_ITERATIONS iterations, or NONPOSITIVE_WEIGHTS
    """
    matrix = associate_matrix(g, g.dimension)
    estimate = perron_iteration(matrix.values)
    if not estimate.converged:
        raise GifsError(
            f"Power iteration did not converge in {estimate.iterations} iterations",
            code="NONCONVERGENT",
            details={"iterations": estimate.iterations},
        )

    index = g.state_index
    h = estimate.vector.copy()
    for state in g.states:
        inverse = state.inverse()
        if state.is_positive and inverse in index:
            mean = 0.5 * (h[index[state]] + h[index[inverse]])
            h[index[state]] = h[index[inverse]] = mean
    total = sum(h[index[state]] for state in g.rule.positive_states)
    h = h / total

    if np.any(h <= 0):
        raise GifsError(
            "Perron vector has nonpositive entries",
            code="NONPOSITIVE_WEIGHTS",
            details={"weights": h.tolist()},
        )
    residual = float(np.max(np.abs(matrix.values @ h - h)))
    logger.debug(f"Weights converged after {estimate.iterations} iterations, residual {residual}")
    return MeasureWeights(g.states, h, residual, estimate.iterations)
