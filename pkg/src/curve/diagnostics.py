"""
Empirical diagnostics of curve approximations: Hölder statistic, Cauchy convergence, anchor
and nesting checks, and a per-depth summary table.
"""

from typing import Optional, Sequence

import numpy as np
import pandas as pd

from src.config import Config
from src.geometry import Tolerance
from src.gifs import InducedGifs
from src.ifs import Skeleton
from src.utils import CurveError, Logger

from .sampler import CurveApproximation, sample_curve

logger = Logger.get_logger(__name__)

UNIFORM_GRID = 4097


def holder_diagnostic(
    approx: CurveApproximation, pairs: Optional[int] = None, seed: Optional[int] = None
) -> float:
    """
    max |φ(t) - φ(t')| / |t - t'|^(1/s) over stratified random pairs.

    The first parameter of each pair is drawn once per stratum of [0, 1]; the gap is
    log-uniform between the smallest segment length and 1.

    Args:
        approx: Curve approximation with at least two samples
        pairs: Number of pairs (Config.HOLDER_PAIRS by default)
        seed: RNG seed (Config.SEED by default)

    Returns:
        float: the statistic (0 for a constant curve)
    """
    if len(approx.t) < 2:
        raise CurveError("Hölder statistic needs at least two samples", code="TOO_FEW_SAMPLES")
    if np.all(approx.points == approx.points[0]):
        return 0.0

    pairs = pairs or Config.HOLDER_PAIRS
    rng = np.random.default_rng(Config.SEED if seed is None else seed)
    smallest = max(float(np.min(np.diff(approx.t))), 1e-15)

    t1 = (np.arange(pairs) + rng.random(pairs)) / pairs
    gap = np.exp(np.log(smallest) * (1.0 - rng.random(pairs)))
    t2 = np.where(t1 + gap <= 1.0, t1 + gap, t1 - gap)
    t2 = np.clip(t2, 0.0, 1.0)
    dt = np.abs(t2 - t1)
    keep = dt > 0
    ratios = np.abs(approx.evaluate(t1[keep]) - approx.evaluate(t2[keep])) / dt[keep] ** (
        1.0 / approx.dimension
    )
    return float(ratios.max()) if ratios.size else 0.0


def convergence_diagnostic(a1: CurveApproximation, a2: CurveApproximation) -> float:
    """
    sup_t |φ_{n+1}(t) - φ_n(t)| over the union of both breakpoint sets and a uniform grid.

    Raises:
        CurveError: DEPTH_MISMATCH unless a2.depth == a1.depth + 1
    """
    if a2.depth != a1.depth + 1:
        raise CurveError(
            "Convergence diagnostic needs consecutive depths",
            code="DEPTH_MISMATCH",
            details={"first": a1.depth, "second": a2.depth},
        )
    grid = np.union1d(np.union1d(a1.t, a2.t), np.linspace(0.0, 1.0, UNIFORM_GRID))
    return float(np.max(np.abs(a2.evaluate(grid) - a1.evaluate(grid))))


def check_anchors(
    approx: CurveApproximation, skeleton: Skeleton, tol: Optional[Tolerance] = None
) -> list[int]:
    """
    Indices j (1-based, m + 1 for the closing point) where φ(Σ_{i<j} h_i) misses a_j.
    """
    tol = tol or skeleton.tolerance
    values = approx.evaluate(approx.anchor_t)
    failures = []
    for j, value in enumerate(values, start=1):
        if not tol.equal(value, skeleton.point(j)):
            failures.append(j)
    return failures


def check_vertex_nesting(
    coarse: CurveApproximation, fine: CurveApproximation, tol: Tolerance
) -> list[int]:
    """Vertex indices of ``coarse`` not reproduced by ``fine`` at the same parameter."""
    gaps = np.abs(fine.evaluate(coarse.t) - coarse.points)
    return np.flatnonzero(gaps > tol.epsilon).tolist()


def diagnostics_table(
    g: InducedGifs,
    depths: Sequence[int],
    pairs: Optional[int] = None,
    seed: Optional[int] = None,
    segment_cap: Optional[int] = None,
) -> pd.DataFrame:
    """
    Per-depth Hölder statistic, gap to the next depth and decay ratio of successive gaps.

    Args:
        g: Certified GIFS with weights
        depths: Increasing consecutive depths
        pairs: Hölder pair count
        seed: Hölder RNG seed
        segment_cap: Segment cap for every sampled depth

    Returns:
        pd.DataFrame: columns depth, segments, holder, gap_to_next, decay_ratio
    """
    depths = list(depths)
    approximations = [sample_curve(g, depth, segment_cap) for depth in depths]
    rows = []
    for i, approx in enumerate(approximations):
        gap = np.nan
        if i + 1 < len(approximations):
            gap = convergence_diagnostic(approx, approximations[i + 1])
        rows.append(
            {
                "depth": approx.depth,
                "segments": approx.segment_count,
                "holder": holder_diagnostic(approx, pairs, seed),
                "gap_to_next": gap,
            }
        )
    table = pd.DataFrame(rows, columns=["depth", "segments", "holder", "gap_to_next"])
    table["decay_ratio"] = table["gap_to_next"] / table["gap_to_next"].shift(1)
    logger.debug(f"Diagnostics computed for depths {depths}")
    return table
