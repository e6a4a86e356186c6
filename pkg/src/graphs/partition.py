"""
Consistent-partition search over Eulerian circuits of the induced graph (cut-and-glue).

A consistent partition splits an Eulerian circuit of G(S, A, β) that starts at a_1 into m
nonempty paths P_1 ... P_m with P_i running from a_i to a_{i+1}. The search is a depth-first
walk from a_1: on reaching the next anchor it first tries to cut the current path there, then
continues along unused out-edges in (cell index, edge index, direction) order.
"""

from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Iterator, Optional, Sequence

from src.config import Config
from src.ifs import IfsSystem, Skeleton
from src.utils import GraphError, Logger, SearchExhausted

from .edges import EdgePath, LabeledEdge
from .induced import InducedGraph, OrientationVector, induced_graph

logger = Logger.get_logger(__name__)


@dataclass(frozen=True)
class Partition:
    """m edge-disjoint paths whose concatenation is an Eulerian circuit of G(S, A, β)."""

    beta: OrientationVector
    paths: tuple[EdgePath, ...]

    def __len__(self) -> int:
        return len(self.paths)

    def edges(self) -> tuple[LabeledEdge, ...]:
        return tuple(edge for path in self.paths for edge in path)

    @property
    def uses_only_positive_edges(self) -> bool:
        return all(edge.edge.is_positive for edge in self.edges())

    def lines(self) -> list[str]:
        return [f"P{i} = {path.label()}" for i, path in enumerate(self.paths, start=1)]


@dataclass(frozen=True)
class Verdict:
    """Certifier answer for one partition; ``payload`` carries the certifier's evidence."""

    accepted: bool
    reason: str = ""
    payload: Any = None


Certifier = Callable[[Partition], Verdict]


@dataclass(frozen=True)
class OrientationResult:
    """Accepted (β, partition) plus the per-β failure log of earlier attempts."""

    beta: OrientationVector
    partition: Partition
    verdict: Verdict
    attempts: tuple[dict, ...] = field(default=())


class _BudgetExceeded(Exception):
    pass


# Move marker for cutting the current path at an anchor; edge ids are nonnegative.
_CUT = -1


@dataclass
class _Frame:
    """One search node: the vertex reached, the move that reached it and the next move."""

    vertex: int
    move: Optional[int]
    cut_pending: bool = False
    complete: bool = False
    cursor: int = 0


class PartitionSearch:
    """
    Backtracking enumeration of consistent partitions of one induced graph.

    After iteration, ``nodes`` holds the number of search nodes visited, ``budget_exceeded``
    tells whether the node cap cut the search short and ``connected`` whether the graph was
    weakly connected at all.
    """

    def __init__(self, graph: InducedGraph, node_budget: Optional[int] = None):
        self.graph = graph
        self.node_budget = node_budget or Config.NODE_BUDGET
        self.nodes = 0
        self.budget_exceeded = False
        self.connected = True

        m = graph.skeleton.m
        self._targets = tuple(graph.anchors[(i + 1) % m] for i in range(m))
        self._used = [False] * len(graph.edges)
        self._trail: list[int] = []
        self._cuts: list[int] = []

    def partitions(self) -> Iterator[Partition]:
        """Yield consistent partitions in deterministic order."""
        if not self.graph.is_connected():
            self.connected = False
            logger.debug(f"Induced graph for beta={self.graph.beta} is disconnected")
            return
        try:
            yield from self._walk(self.graph.anchors[0])
        except _BudgetExceeded:
            self.budget_exceeded = True
            logger.debug(
                f"Node budget {self.node_budget} exceeded for beta={self.graph.beta}"
            )

    def _walk(self, root: int) -> Iterator[Partition]:
        """Depth-first search over an explicit frame stack, yielding each complete partition."""
        stack = [self._enter(root, None)]
        if stack[-1].complete:
            yield self._snapshot()
        while stack:
            frame = stack[-1]
            move = self._advance(frame)
            if move is None:
                stack.pop()
                self._retract(frame.move)
                continue
            head = frame.vertex if move == _CUT else self.graph.heads[move]
            child = self._enter(head, move)
            stack.append(child)
            if child.complete:
                yield self._snapshot()

    def _enter(self, vertex: int, move: Optional[int]) -> "_Frame":
        self.nodes += 1
        if self.nodes > self.node_budget:
            raise _BudgetExceeded()

        frame = _Frame(vertex, move)
        segment = len(self._cuts)
        start = self._cuts[-1] if self._cuts else 0
        if len(self._trail) > start and vertex == self._targets[segment]:
            if segment == self.graph.skeleton.m - 1:
                frame.complete = len(self._trail) == len(self.graph.edges)
            else:
                frame.cut_pending = True
        return frame

    def _advance(self, frame: "_Frame") -> Optional[int]:
        """Take the frame's next move: the pending cut, then the next unused out-edge."""
        if frame.cut_pending:
            frame.cut_pending = False
            self._cuts.append(len(self._trail))
            return _CUT
        out = self.graph.out_edges.get(frame.vertex, ())
        while frame.cursor < len(out):
            eid = out[frame.cursor]
            frame.cursor += 1
            if not self._used[eid]:
                self._used[eid] = True
                self._trail.append(eid)
                return eid
        return None

    def _retract(self, move: Optional[int]) -> None:
        if move is None:
            return
        if move == _CUT:
            self._cuts.pop()
            return
        self._trail.pop()
        self._used[move] = False

    def _snapshot(self) -> Partition:
        bounds = [0] + self._cuts + [len(self._trail)]
        edges = self.graph.edges
        paths = tuple(
            EdgePath(tuple(edges[eid] for eid in self._trail[lo:hi]))
            for lo, hi in zip(bounds[:-1], bounds[1:])
        )
        return Partition(beta=self.graph.beta, paths=paths)


def enumerate_consistent_partitions(
    graph: InducedGraph, limit: Optional[int] = None, node_budget: Optional[int] = None
) -> Iterator[Partition]:
    """
    Yield up to ``limit`` consistent partitions of ``graph`` in lexicographic search order.

    Args:
        graph: Induced graph
        limit: Maximum number of partitions (None for all)
        node_budget: Search node cap (defaults to Config.NODE_BUDGET)
    """
    search = PartitionSearch(graph, node_budget)
    for count, partition in enumerate(search.partitions(), start=1):
        yield partition
        if limit is not None and count >= limit:
            return


def find_consistent_partition(
    graph: InducedGraph, skeleton: Optional[Skeleton] = None, node_budget: Optional[int] = None
) -> Partition:
    """
    First consistent partition of ``graph``.

    Args:
        graph: Induced graph
        skeleton: Must be the graph's skeleton when given
        node_budget: Search node cap

    Returns:
        Partition: the lexicographically first partition

    Raises:
        GraphError: NOT_FOUND when no partition exists (or the budget runs out)
    """
    if skeleton is not None and skeleton is not graph.skeleton:
        raise GraphError("Graph was built over a different skeleton", code="SKELETON_MISMATCH")
    search = PartitionSearch(graph, node_budget)
    for partition in search.partitions():
        return partition
    raise GraphError(
        f"No consistent partition for beta={graph.beta}",
        code="NOT_FOUND",
        details={
            "beta": list(graph.beta.signs),
            "connected": search.connected,
            "budget_exceeded": search.budget_exceeded,
            "nodes": search.nodes,
        },
    )


def is_partition_of(paths: Sequence[EdgePath], graph: InducedGraph) -> bool:
    """
    True iff ``paths`` are chained and use every edge of ``graph`` exactly once.
    """
    skeleton = graph.skeleton
    for path in paths:
        if path.first_break(graph.ifs, skeleton, skeleton.tolerance) is not None:
            return False
    used = Counter(edge for path in paths for edge in path)
    return used == Counter(graph.edges)


def is_consistent(partition: Partition, graph: InducedGraph) -> bool:
    """Partition of ``graph`` whose i-th path runs a_i -> a_{i+1}."""
    skeleton = graph.skeleton
    if len(partition) != skeleton.m or not is_partition_of(partition.paths, graph):
        return False
    tol = skeleton.tolerance
    for i, path in enumerate(partition.paths, start=1):
        if not path.edges:
            return False
        start, _ = path[0].endpoints(graph.ifs, skeleton)
        _, end = path[-1].endpoints(graph.ifs, skeleton)
        if not (tol.equal(start, skeleton.point(i)) and tol.equal(end, skeleton.point(i + 1))):
            return False
    return True


def reverse_partition(partition: Partition) -> Partition:
    """
    Edgewise-reversed paths P_j^-1; they partition G(S, A, -β).
    """
    return Partition(
        beta=partition.beta.negated(),
        paths=tuple(path.reverse() for path in partition.paths),
    )


def _describe_failure(search: PartitionSearch, examined: int, reasons: Iterable[str]) -> str:
    if not search.connected:
        return "induced graph disconnected"
    if examined == 0:
        if search.budget_exceeded:
            return f"node budget {search.node_budget} exceeded before any partition"
        return "no consistent partition"
    counts = Counter(reasons)
    summary = "; ".join(f"{reason} x{count}" for reason, count in sorted(counts.items()))
    suffix = " (node budget exceeded)" if search.budget_exceeded else ""
    return f"{examined} partitions rejected: {summary}{suffix}"


def search_orientation(
    ifs: IfsSystem,
    skeleton: Skeleton,
    certifier: Certifier,
    betas: Optional[Iterable[OrientationVector]] = None,
    node_budget: Optional[int] = None,
    max_partitions: Optional[int] = None,
) -> OrientationResult:
    """
    Search orientation vectors in gray-code order for a partition the certifier accepts.

    Args:
        ifs: The IFS
        skeleton: Valid skeleton
        certifier: Callable judging one partition
        betas: Explicit orientation vectors to try (defaults to all 2^N in gray-code order)
        node_budget: Search node cap per β
        max_partitions: Partitions examined per β

    Returns:
        OrientationResult: first accepted (β, partition)

    Raises:
        SearchExhausted: EXHAUSTED with the per-β failure reasons
    """
    max_partitions = max_partitions or Config.MAX_PARTITIONS
    candidates = OrientationVector.gray_code(ifs.size) if betas is None else betas
    attempts: list[dict] = []

    for beta in candidates:
        try:
            graph = induced_graph(ifs, skeleton, beta)
        except GraphError as e:
            attempts.append({"beta": list(beta.signs), "reason": f"{e.code}: {e}"})
            continue

        search = PartitionSearch(graph, node_budget)
        examined = 0
        reasons = []
        for partition in search.partitions():
            examined += 1
            verdict = certifier(partition)
            if verdict.accepted:
                Logger.log_stage(
                    logger,
                    "search_orientation",
                    "ok",
                    beta=str(beta),
                    partition=examined,
                    nodes=search.nodes,
                )
                return OrientationResult(beta, partition, verdict, tuple(attempts))
            reasons.append(verdict.reason)
            if examined >= max_partitions:
                break

        reason = _describe_failure(search, examined, reasons)
        logger.debug(f"beta={beta} rejected: {reason}")
        attempts.append({"beta": list(beta.signs), "reason": reason, "nodes": search.nodes})

    Logger.log_certificate_issue(logger, "EXHAUSTED", {"orientations": len(attempts)})
    raise SearchExhausted(
        f"No orientation vector out of {len(attempts)} yields a certified partition",
        details={"attempts": attempts},
    )
