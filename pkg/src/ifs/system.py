"""
IFS container, skeleton validation through the Hata graph, and similarity dimension.
"""

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import networkx as nx
import numpy as np

from src.geometry import Point, PointIndex, Similitude, Tolerance
from src.utils import GeometryError, Logger, SkeletonError
from src.utils.helpers import NumericHelpers

logger = Logger.get_logger(__name__)

DIMENSION_BRACKET = (0.0, 64.0)
DIMENSION_TOLERANCE = 1e-12


@dataclass(frozen=True)
class IfsSystem:
    """Ordered family of contracting similitudes S_1 ... S_N."""

    maps: tuple[Similitude, ...]
    name: str = "ifs"

    def __post_init__(self):
        object.__setattr__(self, "maps", tuple(self.maps))
        if len(self.maps) < 2:
            raise GeometryError(
                "An IFS needs at least two maps", details={"maps": len(self.maps)}
            )
        for idx, s in enumerate(self.maps, start=1):
            if not s.is_contracting:
                raise GeometryError(
                    f"S{idx} is not contracting",
                    code="NOT_CONTRACTING",
                    details={"map": idx, "ratio": s.ratio},
                )

    @property
    def size(self) -> int:
        return len(self.maps)

    @property
    def ratios(self) -> np.ndarray:
        return np.array([s.ratio for s in self.maps])

    def map(self, index: int) -> Similitude:
        """The map S_index (1-based)."""
        return self.maps[index - 1]

    def word_map(self, word: Sequence[int]) -> Similitude:
        """Composition S_{w1} ∘ ... ∘ S_{wk}; identity for the empty word."""
        result = Similitude.identity()
        for letter in word:
            result = result.compose(self.map(letter))
        return result

    def level_one_vertices(self, points: Iterable[Point]) -> list[Point]:
        """The points ``S_i(a)`` for every map and every point, map-major."""
        pts = list(points)
        return [s.apply(p) for s in self.maps for p in pts]


@dataclass(frozen=True)
class HataGraph:
    """Graph on map indices with {i, j} present iff S_i(F) and S_j(F) meet."""

    vertices: tuple[int, ...]
    edges: frozenset

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(self.vertices)
        graph.add_edges_from(tuple(edge) for edge in sorted(self.edges))
        return graph

    def is_connected(self) -> bool:
        return nx.is_connected(self.to_networkx())

    def components(self) -> list[list[int]]:
        """Connected components, each sorted, ordered by smallest member."""
        comps = [sorted(c) for c in nx.connected_components(self.to_networkx())]
        return sorted(comps)

    def spanning_tree(self) -> tuple[tuple[int, int], ...]:
        """Edges of a spanning tree, the connectivity certificate."""
        tree = nx.minimum_spanning_tree(self.to_networkx())
        return tuple(sorted(tuple(sorted(edge)) for edge in tree.edges()))


@dataclass(frozen=True)
class Skeleton:
    """Validated ordered skeleton a_1 ... a_m."""

    points: tuple[Point, ...]
    preimage_table: tuple[tuple[tuple[int, int], ...], ...]
    tolerance: Tolerance
    hata: HataGraph
    spanning_tree: tuple[tuple[int, int], ...] = field(default=())

    @property
    def m(self) -> int:
        return len(self.points)

    def point(self, index: int) -> Point:
        """Skeleton point a_index (1-based, cyclic so a_{m+1} = a_1)."""
        return self.points[(index - 1) % self.m]


def hata_graph(ifs: IfsSystem, points: Iterable[Point], tol: Tolerance) -> HataGraph:
    """
    Build the Hata graph H(F).

    Args:
        ifs: The IFS
        points: Finite nonempty point set F
        tol: Point identification tolerance

    Returns:
        HataGraph: graph on 1..N, self-loops omitted
    """
    pts = list(points)
    if not pts:
        raise SkeletonError("Hata graph needs a nonempty point set", code="EMPTY_POINT_SET")

    index = PointIndex(tol)
    images = [
        {index.snap(s.apply(p)) for p in pts}
        for s in ifs.maps
    ]
    edges = set()
    for i in range(ifs.size):
        for j in range(i + 1, ifs.size):
            if images[i] & images[j]:
                edges.add((i + 1, j + 1))
    return HataGraph(vertices=tuple(range(1, ifs.size + 1)), edges=frozenset(edges))


def check_level_one_separation(ifs: IfsSystem, points: Sequence[Point], tol: Tolerance) -> None:
    """
    Verify that distinct level-1 vertices lie more than ``2 * epsilon`` apart.

    Raises:
        GraphError: DEGENERATE_VERTEXSET when the tolerance is too coarse
    """
    index = PointIndex(tol)
    for p in list(points) + ifs.level_one_vertices(points):
        index.snap(p)


def validate_skeleton(
    ifs: IfsSystem, points: Sequence[Point], tol: Optional[Tolerance] = None
) -> Skeleton:
    """
    Validate a skeleton: coverage A ⊂ ∪ S_j(A) and connectivity of H(A).

    Args:
        ifs: The IFS
        points: Ordered candidate points a_1 ... a_m
        tol: Tolerance; defaults to Tolerance.for_points(points)

    Returns:
        Skeleton: with preimage table and spanning-tree certificate

    Raises:
        SkeletonError: REJECT_TOO_FEW_POINTS, REJECT_DUPLICATE_POINTS, REJECT_NOT_COVERED or
            REJECT_DISCONNECTED
    """
    pts = tuple(complex(p) for p in points)
    if len(pts) < 2:
        raise SkeletonError(
            "A skeleton needs at least two points",
            code="REJECT_TOO_FEW_POINTS",
            details={"points": len(pts)},
        )
    tol = tol or Tolerance.for_points(pts)

    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            if tol.equal(pts[i], pts[j]):
                raise SkeletonError(
                    f"Skeleton points a{i + 1} and a{j + 1} coincide",
                    code="REJECT_DUPLICATE_POINTS",
                    details={"first": i + 1, "second": j + 1},
                )

    check_level_one_separation(ifs, pts, tol)

    table = []
    for i, a in enumerate(pts, start=1):
        preimages = tuple(
            (j, k)
            for j, s in enumerate(ifs.maps, start=1)
            for k, b in enumerate(pts, start=1)
            if tol.equal(s.apply(b), a)
        )
        if not preimages:
            Logger.log_certificate_issue(logger, "REJECT_NOT_COVERED", {"point": i})
            raise SkeletonError(
                f"a{i} is not covered by the level-1 images of the skeleton",
                code="REJECT_NOT_COVERED",
                details={"point": i, "coordinates": NumericHelpers.from_complex(a)},
            )
        table.append(preimages)

    hata = hata_graph(ifs, pts, tol)
    if not hata.is_connected():
        components = hata.components()
        Logger.log_certificate_issue(logger, "REJECT_DISCONNECTED", {"components": components})
        raise SkeletonError(
            f"Hata graph of the skeleton has {len(components)} components",
            code="REJECT_DISCONNECTED",
            details={"components": components},
        )

    skeleton = Skeleton(
        points=pts,
        preimage_table=tuple(table),
        tolerance=tol,
        hata=hata,
        spanning_tree=hata.spanning_tree(),
    )
    logger.debug(f"Skeleton of {skeleton.m} points validated for {ifs.name}")
    return skeleton


def similarity_dimension(ifs: IfsSystem) -> float:
    """
    Solve sum_j c_j^s = 1 by bisection on [0, 64].

    Args:
        ifs: The IFS

    Returns:
        float: similarity dimension to absolute 1e-12
    """
    ratios = ifs.ratios
    lo, hi = DIMENSION_BRACKET
    while hi - lo > DIMENSION_TOLERANCE:
        mid = 0.5 * (lo + hi)
        if np.sum(ratios**mid) > 1.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
