"""
Substitution package initialization.
"""

from .certifier import RuleAssessment, RuleCertifier, assess_rule
from .coarse import CoarseSubstitution, Primitivity, coarse, is_primitive
from .pure_cell import PureCellWitness, find_pure_cell
from .rule import (
    RuleCertificate,
    SubstitutionRule,
    canonical_domain,
    format_rule,
    is_traversing,
    iterate,
    parse_rule,
    rule_from_partition,
    validate_rule,
)

__all__ = [
    "RuleAssessment",
    "RuleCertifier",
    "assess_rule",
    "CoarseSubstitution",
    "Primitivity",
    "coarse",
    "is_primitive",
    "PureCellWitness",
    "find_pure_cell",
    "RuleCertificate",
    "SubstitutionRule",
    "canonical_domain",
    "format_rule",
    "is_traversing",
    "iterate",
    "parse_rule",
    "rule_from_partition",
    "validate_rule",
]
