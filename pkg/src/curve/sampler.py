"""
Depth-n approximation of the optimal parameterization φ: [0, 1] → K.

The broken line τ^n(Λ_0) is expanded level by level on numpy arrays holding, per segment, the
composed similitude (scale, offset, reflects), the terminal state, the map word (encoded in
base N) and the top-level loop edge it descends from. Segment γ with terminal state v gets
parameter mass c_γ^s · h_v.
"""

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from src.config import Config
from src.geometry import Point
from src.gifs import InducedGifs, measure_weights
from src.graphs import AbstractEdge
from src.utils import CurveError, Logger

logger = Logger.get_logger(__name__)


@dataclass(frozen=True)
class CurveSample:
    t: float
    point: Point


@dataclass(frozen=True)
class CurveApproximation:
    """
    Vertices ``points`` at parameters ``t`` (sorted, t[0] = 0, t[-1] = 1) plus per-segment
    metadata: ``segment_states`` indexes ``states``, ``codes`` encodes the map word in base
    ``map_count`` and ``branches`` is the 0-based top-level loop edge.
    """

    depth: int
    t: np.ndarray
    points: np.ndarray
    dimension: float
    masses: np.ndarray = field(default_factory=lambda: np.zeros(0))
    total_mass: float = 1.0
    states: tuple[AbstractEdge, ...] = ()
    segment_states: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=np.int64))
    codes: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=np.int64))
    branches: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=np.int64))
    anchor_t: np.ndarray = field(default_factory=lambda: np.zeros(0))
    map_count: int = 0

    @property
    def segment_count(self) -> int:
        return len(self.points) - 1

    @property
    def samples(self) -> list[CurveSample]:
        return [CurveSample(float(t), complex(p)) for t, p in zip(self.t, self.points)]

    def evaluate(self, t):
        """Piecewise-linear φ_n at parameter(s) ``t``."""
        t = np.asarray(t, dtype=float)
        return np.interp(t, self.t, self.points.real) + 1j * np.interp(
            t, self.t, self.points.imag
        )

    def word(self, segment: int) -> tuple[int, ...]:
        """1-based map word of a segment."""
        code = int(self.codes[segment])
        letters = []
        for _ in range(self.depth):
            code, digit = divmod(code, self.map_count)
            letters.append(digit + 1)
        return tuple(reversed(letters))

    def state(self, segment: int) -> AbstractEdge:
        return self.states[int(self.segment_states[segment])]


def segment_count(g: InducedGifs, depth: int) -> int:
    """Exact number of segments of τ^depth(Λ_0), computed with Python integers."""
    counts = {state: 1 for state in g.states}
    for _ in range(depth):
        counts = {
            state: sum(counts[b.target] for b in g.outgoing(state)) for state in g.states
        }
    return sum(counts[state] for state in g.rule.positive_states)


def _apply(scale, offset, reflects, points):
    z = np.where(reflects, np.conj(points), points)
    return scale * z + offset


def sample_curve(
    g: InducedGifs, n: int, segment_cap: Optional[int] = None
) -> CurveApproximation:
    """
    Expand τ^n(Λ_0) and parameterize it by cylinder measure.

    Args:
        g: Certified induced GIFS (weights computed on demand when unset)
        n: Depth >= 0
        segment_cap: Largest admissible segment count (Config.SEGMENT_CAP by default)

    Returns:
        CurveApproximation

    Raises:
        CurveError: DEPTH_OVERFLOW, BAD_DEPTH
    """
    if n < 0:
        raise CurveError("Depth must be >= 0", code="BAD_DEPTH", details={"depth": n})
    segment_cap = segment_cap or Config.SEGMENT_CAP
    expected = segment_count(g, n)
    if expected > segment_cap:
        raise CurveError(
            f"Depth {n} needs {expected} segments, above the cap {segment_cap}",
            code="DEPTH_OVERFLOW",
            details={"depth": n, "segments": expected, "cap": segment_cap},
        )

    weights = g.weights if g.weights is not None else measure_weights(g).as_dict()
    states = g.states
    index = g.state_index
    N = g.ifs.size

    lengths = np.array([len(g.outgoing(state)) for state in states], dtype=np.int64)
    width = int(lengths.max())
    bridge_maps = np.zeros((len(states), width), dtype=np.int64)
    bridge_targets = np.zeros((len(states), width), dtype=np.int64)
    for sid, state in enumerate(states):
        for k, bridge in enumerate(g.outgoing(state)):
            bridge_maps[sid, k] = bridge.map_index - 1
            bridge_targets[sid, k] = index[bridge.target]

    map_scale = np.array([s.scale for s in g.ifs.maps])
    map_offset = np.array([s.offset for s in g.ifs.maps])
    map_reflects = np.array([s.reflects for s in g.ifs.maps])

    loop = g.rule.positive_states
    state_ids = np.array([index[state] for state in loop], dtype=np.int64)
    scale = np.ones(len(loop), dtype=complex)
    offset = np.zeros(len(loop), dtype=complex)
    reflects = np.zeros(len(loop), dtype=bool)
    codes = np.zeros(len(loop), dtype=np.int64)
    branches = np.arange(len(loop), dtype=np.int64)

    for _ in range(n):
        counts = lengths[state_ids]
        parent = np.repeat(np.arange(len(state_ids)), counts)
        starts = np.cumsum(counts) - counts
        order = np.arange(parent.size) - np.repeat(starts, counts)
        parent_state = state_ids[parent]
        maps = bridge_maps[parent_state, order]

        ps, po, pr = scale[parent], offset[parent], reflects[parent]
        ms, mo = map_scale[maps], map_offset[maps]
        scale = np.where(pr, ps * np.conj(ms), ps * ms)
        offset = np.where(pr, ps * np.conj(mo), ps * mo) + po
        reflects = pr ^ map_reflects[maps]
        state_ids = bridge_targets[parent_state, order]
        codes = codes[parent] * N + maps
        branches = branches[parent]

    tails = np.array([state.endpoints(g.skeleton)[0] for state in states])
    heads = np.array([state.endpoints(g.skeleton)[1] for state in states])
    starts_pts = _apply(scale, offset, reflects, tails[state_ids])
    last_end = _apply(scale[-1:], offset[-1:], reflects[-1:], heads[state_ids[-1:]])
    points = np.concatenate([starts_pts, last_end])

    h = np.array([weights[state] for state in states])
    masses = np.abs(scale) ** g.dimension * h[state_ids]
    cumulative = np.concatenate([[0.0], np.cumsum(masses)])
    total = float(cumulative[-1])
    t = cumulative / total
    t[-1] = 1.0

    anchor_h = np.array([weights[state] for state in loop])
    anchor_t = np.concatenate([[0.0], np.cumsum(anchor_h)]) / anchor_h.sum()

    logger.debug(f"Sampled depth {n}: {masses.size} segments, total mass {total!r}")
    return CurveApproximation(
        depth=n,
        t=t,
        points=points,
        dimension=g.dimension,
        masses=masses,
        total_mass=total,
        states=states,
        segment_states=state_ids,
        codes=codes,
        branches=branches,
        anchor_t=anchor_t,
        map_count=N,
    )


def sample_depths(g: InducedGifs, depths: Sequence[int]) -> dict[int, CurveApproximation]:
    """Sample several depths of the same GIFS."""
    return {depth: sample_curve(g, depth) for depth in depths}
