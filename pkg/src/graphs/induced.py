"""
Orientation vectors and the induced graph G(S, A, β) = ∪_j S_j(Λ_0^{β_j}).
"""

from collections import defaultdict
from dataclasses import dataclass
from typing import Iterator, Sequence

import networkx as nx

from src.geometry import Point, PointIndex
from src.ifs import IfsSystem, Skeleton
from src.utils import GraphError, Logger

from .edges import AbstractEdge, LabeledEdge

logger = Logger.get_logger(__name__)


@dataclass(frozen=True)
class OrientationVector:
    """Sign vector β ∈ {+1, -1}^N choosing the direction of each cell's loop."""

    signs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "signs", tuple(int(s) for s in self.signs))
        if any(s not in (1, -1) for s in self.signs):
            raise GraphError(
                "Orientation entries must be +1 or -1",
                code="BAD_ORIENTATION",
                details={"signs": list(self.signs)},
            )

    def __len__(self) -> int:
        return len(self.signs)

    def sign(self, map_index: int) -> int:
        return self.signs[map_index - 1]

    def negated(self) -> "OrientationVector":
        return OrientationVector(tuple(-s for s in self.signs))

    @classmethod
    def positive(cls, n: int) -> "OrientationVector":
        return cls((1,) * n)

    @classmethod
    def gray_code(cls, n: int) -> Iterator["OrientationVector"]:
        """All 2^n vectors in reflected gray-code order, starting at (1, ..., 1)."""
        for i in range(2**n):
            code = i ^ (i >> 1)
            yield cls(tuple(-1 if (code >> bit) & 1 else 1 for bit in range(n)))

    def __str__(self) -> str:
        return "(" + ",".join(str(s) for s in self.signs) + ")"


@dataclass(frozen=True)
class InducedGraph:
    """
    The N·m labeled edges of G(S, A, β) with snapped vertices.

    ``edges`` is cell-major: cell j contributes S_j(Λ_0) or S_j(Λ_0^{-1}) in loop order.
    ``tails``/``heads`` hold vertex ids; ``anchors[i]`` is the vertex id of a_{i+1}.
    """

    ifs: IfsSystem
    skeleton: Skeleton
    beta: OrientationVector
    edges: tuple[LabeledEdge, ...]
    vertices: tuple[Point, ...]
    tails: tuple[int, ...]
    heads: tuple[int, ...]
    anchors: tuple[int, ...]
    out_edges: dict

    @property
    def cells(self) -> tuple[tuple[LabeledEdge, ...], ...]:
        m = self.skeleton.m
        return tuple(self.edges[j * m : (j + 1) * m] for j in range(self.ifs.size))

    def edge_key(self, edge_id: int) -> tuple[int, int, int]:
        """Tie-break key (cell index, edge index, direction)."""
        return tie_break_key(self.edges[edge_id])

    def to_networkx(self) -> nx.MultiDiGraph:
        graph = nx.MultiDiGraph()
        graph.add_nodes_from(range(len(self.vertices)))
        for eid, (u, v) in enumerate(zip(self.tails, self.heads)):
            graph.add_edge(u, v, key=eid, label=self.edges[eid].label())
        return graph

    def is_connected(self) -> bool:
        return nx.is_weakly_connected(self.to_networkx())

    def is_balanced(self) -> bool:
        """In-degree equals out-degree at every vertex."""
        graph = self.to_networkx()
        return all(graph.in_degree(v) == graph.out_degree(v) for v in graph.nodes)


def tie_break_key(edge: LabeledEdge) -> tuple[int, int, int]:
    return (edge.word[0], edge.edge.index, 0 if edge.edge.is_positive else 1)


def cell_loop(map_index: int, sign: int, m: int) -> tuple[LabeledEdge, ...]:
    """S_j(Λ_0) for sign +1, S_j(Λ_0^{-1}) = S_j(v_m^-1 ... v_1^-1) for sign -1."""
    if sign == 1:
        return tuple(LabeledEdge((map_index,), AbstractEdge(k, 1)) for k in range(1, m + 1))
    return tuple(LabeledEdge((map_index,), AbstractEdge(k, -1)) for k in range(m, 0, -1))


def induced_graph(ifs: IfsSystem, skeleton: Skeleton, beta: OrientationVector) -> InducedGraph:
    """
    Build G(S, A, β).

    Args:
        ifs: The IFS
        skeleton: Valid skeleton
        beta: Orientation vector of length N

    Returns:
        InducedGraph: N·m labeled edges with snapped vertex ids

    Raises:
        GraphError: DEGENERATE_VERTEXSET, BAD_ORIENTATION or UNBALANCED_VERTEX
    """
    if len(beta) != ifs.size:
        raise GraphError(
            "Orientation vector length must equal the number of maps",
            code="BAD_ORIENTATION",
            details={"length": len(beta), "maps": ifs.size},
        )

    index = PointIndex(skeleton.tolerance)
    anchors = tuple(index.snap(a) for a in skeleton.points)

    edges: list[LabeledEdge] = []
    tails: list[int] = []
    heads: list[int] = []
    for j in range(1, ifs.size + 1):
        for edge in cell_loop(j, beta.sign(j), skeleton.m):
            tail, head = edge.endpoints(ifs, skeleton)
            edges.append(edge)
            tails.append(index.snap(tail))
            heads.append(index.snap(head))

    grouped = defaultdict(list)
    for eid, tail in enumerate(tails):
        grouped[tail].append(eid)
    out_edges = {
        vertex: tuple(sorted(eids, key=lambda eid: tie_break_key(edges[eid])))
        for vertex, eids in grouped.items()
    }

    graph = InducedGraph(
        ifs=ifs,
        skeleton=skeleton,
        beta=beta,
        edges=tuple(edges),
        vertices=tuple(index.points),
        tails=tuple(tails),
        heads=tuple(heads),
        anchors=anchors,
        out_edges=out_edges,
    )

    if not graph.is_balanced():
        raise GraphError(
            "Induced graph has a vertex with in-degree != out-degree",
            code="UNBALANCED_VERTEX",
            details={"beta": list(beta.signs)},
        )
    logger.debug(
        f"Induced graph for beta={beta}: {len(edges)} edges, {len(index)} vertices"
    )
    return graph
