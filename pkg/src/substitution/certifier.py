"""
Partition certifier used by the orientation search: primitivity plus a pure cell.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from src.graphs import Partition, Verdict
from src.ifs import Skeleton

from .coarse import CoarseSubstitution, Primitivity, coarse, is_primitive
from .pure_cell import PureCellWitness, find_pure_cell
from .rule import SubstitutionRule, rule_from_partition


@dataclass(frozen=True)
class RuleAssessment:
    """Everything learned about a candidate rule while certifying it."""

    rule: SubstitutionRule
    coarse: CoarseSubstitution
    incidence: np.ndarray
    primitivity: Primitivity
    witness: Optional[PureCellWitness]


def assess_rule(rule: SubstitutionRule, max_depth: Optional[int] = None) -> RuleAssessment:
    """Coarse projection, primitivity and pure-cell search for one rule."""
    substitution, matrix = coarse(rule)
    primitivity = is_primitive(matrix)
    witness = find_pure_cell(rule, max_depth) if primitivity.primitive else None
    return RuleAssessment(rule, substitution, matrix, primitivity, witness)


class RuleCertifier:
    """Accepts a partition when its rule is primitive and has a pure cell."""

    def __init__(self, skeleton: Skeleton, max_depth: Optional[int] = None):
        self.skeleton = skeleton
        self.max_depth = max_depth

    def __call__(self, partition: Partition) -> Verdict:
        assessment = assess_rule(rule_from_partition(partition, self.skeleton), self.max_depth)
        if not assessment.primitivity.primitive:
            return Verdict(False, "not primitive", assessment)
        if assessment.witness is None:
            return Verdict(False, "no pure cell", assessment)
        return Verdict(True, "", assessment)
