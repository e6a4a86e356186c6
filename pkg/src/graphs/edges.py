"""
Abstract loop edges, labeled affine copies and edge paths.

An abstract edge v_j runs a_j -> a_{j+1} (indices cyclic); v_j^-1 runs backwards. A labeled edge
pairs an abstract edge with a map word I and stands for the segment S_I(v). Two labeled edges are
the same edge only when both word and abstract edge coincide.
"""

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence, Union

from src.geometry import Point, Tolerance
from src.ifs import IfsSystem, Skeleton
from src.utils import RuleError

_STATE_PATTERN = re.compile(r"^v(\d+)(\^-1)?$")


@dataclass(frozen=True)
class AbstractEdge:
    """v_index when direction is +1, v_index^-1 when direction is -1."""

    index: int
    direction: int = 1

    def __post_init__(self):
        if self.index < 1 or self.direction not in (1, -1):
            raise RuleError(
                "Abstract edge needs index >= 1 and direction +1/-1",
                code="BAD_EDGE_FORM",
                details={"index": self.index, "direction": self.direction},
            )

    def inverse(self) -> "AbstractEdge":
        return AbstractEdge(self.index, -self.direction)

    @property
    def is_positive(self) -> bool:
        return self.direction == 1

    def sort_key(self) -> tuple[int, int]:
        """Orders v_1 < v_1^-1 < v_2 < ..."""
        return (self.index, 0 if self.direction == 1 else 1)

    def endpoint_indices(self, m: int) -> tuple[int, int]:
        """1-based skeleton indices (tail, head)."""
        forward = (self.index, self.index % m + 1)
        return forward if self.direction == 1 else (forward[1], forward[0])

    def endpoints(self, skeleton: Skeleton) -> tuple[Point, Point]:
        tail, head = self.endpoint_indices(skeleton.m)
        return skeleton.point(tail), skeleton.point(head)

    def label(self) -> str:
        return f"v{self.index}" if self.direction == 1 else f"v{self.index}^-1"

    @classmethod
    def parse(cls, text: str) -> "AbstractEdge":
        """
        Parse ``vj`` or ``vj^-1``.

        Raises:
            RuleError: BAD_RULE_TEXT on malformed input
        """
        match = _STATE_PATTERN.match(text.strip())
        if not match:
            raise RuleError(
                f"Malformed state '{text}'", code="BAD_RULE_TEXT", details={"text": text}
            )
        return cls(int(match.group(1)), -1 if match.group(2) else 1)

    def __str__(self) -> str:
        return self.label()


@dataclass(frozen=True)
class LabeledEdge:
    """The edge (v, S_I): abstract edge ``edge`` carried by the map word ``word``."""

    word: tuple[int, ...]
    edge: AbstractEdge

    def __post_init__(self):
        object.__setattr__(self, "word", tuple(self.word))

    def inverse(self) -> "LabeledEdge":
        return LabeledEdge(self.word, self.edge.inverse())

    def prefixed(self, word: Sequence[int]) -> "LabeledEdge":
        return LabeledEdge(tuple(word) + self.word, self.edge)

    def endpoints(self, ifs: IfsSystem, skeleton: Skeleton) -> tuple[Point, Point]:
        """Geometric endpoints S_I(tail), S_I(head)."""
        s = ifs.word_map(self.word)
        tail, head = self.edge.endpoints(skeleton)
        return s.apply(tail), s.apply(head)

    def label(self) -> str:
        if not self.word:
            return self.edge.label()
        if len(self.word) == 1:
            return f"S{self.word[0]}({self.edge.label()})"
        letters = ",".join(str(letter) for letter in self.word)
        return f"S[{letters}]({self.edge.label()})"

    def __str__(self) -> str:
        return self.label()


@dataclass(frozen=True)
class EdgePath:
    """Ordered sequence of labeled edges."""

    edges: tuple[LabeledEdge, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(self.edges))

    def __len__(self) -> int:
        return len(self.edges)

    def __iter__(self) -> Iterator[LabeledEdge]:
        return iter(self.edges)

    def __getitem__(self, item):
        return self.edges[item]

    def __add__(self, other: "EdgePath") -> "EdgePath":
        return EdgePath(self.edges + other.edges)

    def reverse(self) -> "EdgePath":
        """Edgewise reversal: order reversed and every edge inverted."""
        return EdgePath(tuple(e.inverse() for e in reversed(self.edges)))

    def prefixed(self, word: Sequence[int]) -> "EdgePath":
        return EdgePath(tuple(e.prefixed(word) for e in self.edges))

    def points(self, ifs: IfsSystem, skeleton: Skeleton) -> list[Point]:
        """Vertex sequence of the broken line (one more than the edge count)."""
        if not self.edges:
            return []
        pairs = [e.endpoints(ifs, skeleton) for e in self.edges]
        return [p for p, _ in pairs] + [pairs[-1][1]]

    def first_break(self, ifs: IfsSystem, skeleton: Skeleton, tol: Tolerance) -> Optional[int]:
        """Position k where edge k does not end at the start of edge k+1, or None."""
        pairs = [e.endpoints(ifs, skeleton) for e in self.edges]
        for k in range(len(pairs) - 1):
            if not tol.equal(pairs[k][1], pairs[k + 1][0]):
                return k
        return None

    def label(self) -> str:
        return " ".join(e.label() for e in self.edges)

    def __str__(self) -> str:
        return self.label()


def build_loop(skeleton: Skeleton) -> EdgePath:
    """
    The loop Λ_0 = v_1 v_2 ... v_m with empty map words.

    Args:
        skeleton: Valid skeleton

    Returns:
        EdgePath: m edges closing at a_1
    """
    return EdgePath(tuple(LabeledEdge((), AbstractEdge(j, 1)) for j in range(1, skeleton.m + 1)))


Copyable = Union[LabeledEdge, EdgePath, Sequence[EdgePath]]


def affine_copy(word: Iterable[int], item: Copyable):
    """
    Affine copy S_word(item): prepend ``word`` to every labeled edge.

    Args:
        word: Map word
        item: LabeledEdge, EdgePath, or a sequence of EdgePaths (e.g. a partition)

    Returns:
        Same kind as ``item``
    """
    word = tuple(word)
    if isinstance(item, LabeledEdge):
        return item.prefixed(word)
    if isinstance(item, EdgePath):
        return item.prefixed(word)
    return type(item)(path.prefixed(word) for path in item)
