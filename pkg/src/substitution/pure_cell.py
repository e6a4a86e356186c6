"""
Pure-cell search: a depth-n word I and sign such that all m edges S_I(v_j) (or all S_I(v_j^-1))
occur in τ^n(u).
"""

from collections import defaultdict
from dataclasses import dataclass
from typing import Optional

from src.config import Config
from src.graphs import AbstractEdge, EdgePath, LabeledEdge
from src.utils import Logger

from .rule import SubstitutionRule, iterate

logger = Logger.get_logger(__name__)


@dataclass(frozen=True)
class PureCellWitness:
    state: AbstractEdge
    word: tuple[int, ...]
    sign: int

    @property
    def depth(self) -> int:
        return len(self.word)

    def edges(self, m: int) -> tuple[LabeledEdge, ...]:
        """The m labeled edges of the witnessed cell."""
        return tuple(LabeledEdge(self.word, AbstractEdge(j, self.sign)) for j in range(1, m + 1))

    def label(self) -> str:
        sign = "+" if self.sign == 1 else "-"
        word = ",".join(str(letter) for letter in self.word)
        return f"u={self.state.label()} I=({word}) sign={sign} depth={self.depth}"


def find_pure_cell(
    rule: SubstitutionRule, max_depth: Optional[int] = None
) -> Optional[PureCellWitness]:
    """
    Search depths 1..max_depth, then states in domain order, then words lexicographically
    (positive sign first) for a full cell inside τ^n(u).

    Args:
        rule: Valid substitution rule
        max_depth: Deepest level searched (Config.PURE_CELL_DEPTH by default)

    Returns:
        PureCellWitness or None when no witness exists within max_depth
    """
    max_depth = max_depth or Config.PURE_CELL_DEPTH
    expansions = {state: EdgePath((LabeledEdge((), state),)) for state in rule.domain}
    for n in range(1, max_depth + 1):
        for state in rule.domain:
            expansions[state] = iterate(rule, expansions[state], 1)
            cells = defaultdict(set)
            for edge in expansions[state]:
                cells[(edge.word, edge.edge.direction)].add(edge.edge.index)
            full = sorted(
                (word, 0 if sign == 1 else 1)
                for (word, sign), indices in cells.items()
                if len(indices) == rule.m
            )
            if full:
                word, sign_key = full[0]
                witness = PureCellWitness(state=state, word=word, sign=1 if sign_key == 0 else -1)
                logger.debug(f"Pure cell found: {witness.label()}")
                return witness
    logger.debug(f"No pure cell within depth {max_depth}")
    return None
