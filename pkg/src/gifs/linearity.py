"""
Chain condition, dictionary-order linearity, pure-cell containment and the set-equation
expansion used as an independent check of symbolic iteration.

The head and tail of E_u are the geometric endpoints a_u, b_u of the state edge u.
"""

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterator

from src.geometry import Similitude
from src.graphs import AbstractEdge, LabeledEdge
from src.substitution import PureCellWitness
from src.utils import GifsError, Logger

from .induced_gifs import Bridge, InducedGifs

logger = Logger.get_logger(__name__)


@dataclass(frozen=True)
class ChainViolation:
    state: str
    kind: str
    order: int
    gap: float


@dataclass(frozen=True)
class ChainReport:
    """
    Outcome of the chain-condition check.

    ``junctions`` counts consecutive bridge pairs (Σ_u (ℓ_u - 1)), ``anchors`` the head and tail
    anchors (two per state) and ``glued_bridges`` the bridges whose entry point is verified,
    either by the head anchor (first bridge) or by the junction with its predecessor.
    """

    holds: bool
    junctions: int
    anchors: int
    bridges: int
    glued_bridges: int
    violations: tuple[ChainViolation, ...] = field(default=())


def _head_tail(g: InducedGifs, state: AbstractEdge):
    return state.endpoints(g.skeleton)


def check_chain_condition(g: InducedGifs) -> ChainReport:
    """
    Verify S_ω(b_{t(ω)}) = S_γ(a_{t(γ)}) for consecutive bridges ω ≺ γ of every state, plus
    the head anchor S_first(a_{t(first)}) = a_u and the tail anchor S_last(b_{t(last)}) = b_u.

    Returns:
        ChainReport: never raises; violations are listed
    """
    tol = g.skeleton.tolerance
    violations: list[ChainViolation] = []
    junctions = anchors = glued = 0

    for state in g.states:
        terms = g.outgoing(state)
        head, tail = _head_tail(g, state)
        if not terms:
            violations.append(ChainViolation(state.label(), "empty", 0, float("inf")))
            continue
        ends = []
        for bridge in terms:
            s = g.ifs.map(bridge.map_index)
            a_t, b_t = _head_tail(g, bridge.target)
            ends.append((s.apply(a_t), s.apply(b_t)))

        anchors += 2
        gap = abs(ends[0][0] - head)
        if gap <= tol.epsilon:
            glued += 1
        else:
            violations.append(ChainViolation(state.label(), "head", 1, gap))
        gap = abs(ends[-1][1] - tail)
        if gap > tol.epsilon:
            violations.append(ChainViolation(state.label(), "tail", len(terms), gap))

        for k in range(1, len(terms)):
            junctions += 1
            gap = abs(ends[k - 1][1] - ends[k][0])
            if gap <= tol.epsilon:
                glued += 1
            else:
                violations.append(ChainViolation(state.label(), "junction", k, gap))

    report = ChainReport(
        holds=not violations,
        junctions=junctions,
        anchors=anchors,
        bridges=len(g.all_bridges()),
        glued_bridges=glued,
        violations=tuple(violations),
    )
    if violations:
        Logger.log_certificate_issue(
            logger, "CHAIN_CONDITION", {"violations": len(violations), "first": violations[0]}
        )
    return report


@dataclass(frozen=True)
class GifsPath:
    """A path of bridges from a state: its map word, bridge orders, terminal state and map."""

    word: tuple[int, ...]
    orders: tuple[int, ...]
    target: AbstractEdge
    similitude: Similitude

    def cylinder_endpoints(self, g: InducedGifs):
        """Images of the head and tail of E_{t(γ)}."""
        head, tail = _head_tail(g, self.target)
        return self.similitude.apply(head), self.similitude.apply(tail)


def enumerate_paths(g: InducedGifs, state: AbstractEdge, depth: int) -> list[GifsPath]:
    """
    All bridge paths of length ``depth`` from ``state`` in ≺-dictionary order.
    """
    start = GifsPath((), (), state, Similitude.identity())
    return list(_extend(g, start, depth))


def _extend(g: InducedGifs, path: GifsPath, depth: int) -> Iterator[GifsPath]:
    if depth == 0:
        yield path
        return
    for bridge in g.outgoing(path.target):
        yield from _extend(g, _append(g, path, bridge), depth - 1)


def _append(g: InducedGifs, path: GifsPath, bridge: Bridge) -> GifsPath:
    return GifsPath(
        word=path.word + (bridge.map_index,),
        orders=path.orders + (bridge.order,),
        target=bridge.target,
        similitude=path.similitude.compose(g.ifs.map(bridge.map_index)),
    )


@dataclass(frozen=True)
class LinearityReport:
    holds: bool
    pairs_checked: int
    max_depth: int
    violations: tuple[tuple[str, int, tuple[int, ...]], ...] = field(default=())


def check_linearity(g: InducedGifs, max_depth: int = 3) -> LinearityReport:
    """
    Adjacent same-length paths (dictionary order) must have cylinders meeting at the junction:
    the tail image of one equals the head image of the next.

    Args:
        g: Induced GIFS
        max_depth: Longest path length checked

    Returns:
        LinearityReport
    """
    tol = g.skeleton.tolerance
    pairs = 0
    violations = []
    for state in g.states:
        for depth in range(1, max_depth + 1):
            paths = enumerate_paths(g, state, depth)
            for left, right in zip(paths[:-1], paths[1:]):
                pairs += 1
                _, left_tail = left.cylinder_endpoints(g)
                right_head, _ = right.cylinder_endpoints(g)
                if not tol.equal(left_tail, right_head):
                    violations.append((state.label(), depth, right.orders))
    return LinearityReport(not violations, pairs, max_depth, tuple(violations))


def expand_set_equation(g: InducedGifs, depth: int) -> Counter:
    """
    Labeled-edge multiset obtained by expanding the set equations of v_1 ... v_m ``depth`` times
    through the bridges.
    """
    edges = Counter()
    for state in g.rule.positive_states:
        for path in enumerate_paths(g, state, depth):
            edges[LabeledEdge(path.word, path.target)] += 1
    return edges


@dataclass(frozen=True)
class PureCellReport:
    witness: str
    cylinders: tuple[str, ...]
    conclusion: str


def check_pure_cell_disjointness(g: InducedGifs, witness: PureCellWitness) -> PureCellReport:
    """
    Confirm that the n-th expansion of E_u contains every S_I(E_{v_j}) of the witnessed cell.

    Raises:
        GifsError: WITNESS_INVALID
    """
    if witness.state not in g.bridges or witness.depth < 1:
        raise GifsError(
            "Witness state is not a state of the GIFS",
            code="WITNESS_INVALID",
            details={"witness": witness.label()},
        )
    present = {
        (path.word, path.target) for path in enumerate_paths(g, witness.state, witness.depth)
    }
    required = witness.edges(g.skeleton.m)
    missing = [edge.label() for edge in required if (edge.word, edge.edge) not in present]
    if missing:
        raise GifsError(
            f"Witness {witness.label()} misses {len(missing)} cylinders",
            code="WITNESS_INVALID",
            details={"witness": witness.label(), "missing": missing},
        )
    return PureCellReport(
        witness=witness.label(),
        cylinders=tuple(edge.label() for edge in required),
        conclusion="K is the union of E_v1..E_vm, disjoint in s-dimensional measure",
    )
