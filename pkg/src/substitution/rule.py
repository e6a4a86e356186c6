"""
Fine substitution rules: construction from partitions, canonical text form, validation,
the traversing-path criterion and symbolic iteration.
"""

import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

from src.geometry import Tolerance
from src.graphs import AbstractEdge, EdgePath, LabeledEdge, Partition
from src.ifs import IfsSystem, Skeleton
from src.utils import Logger, RuleError

logger = Logger.get_logger(__name__)

_LINE_PATTERN = re.compile(r"^\s*(v\d+(?:\^-1)?)\s*->\s*(.*?)\s*$")
_TERM_PATTERN = re.compile(r"^S(\d+)\((v\d+(?:\^-1)?)\)$")


@dataclass(frozen=True)
class SubstitutionRule:
    """τ: u ↦ P_u for every state u of the domain V."""

    m: int
    domain: tuple[AbstractEdge, ...]
    images: Mapping[AbstractEdge, EdgePath]

    def image(self, state: AbstractEdge) -> EdgePath:
        """
        P_u for state ``u``.

        Raises:
            RuleError: DOMAIN_MISS when ``u`` is outside the domain
        """
        try:
            return self.images[state]
        except KeyError:
            raise RuleError(
                f"State {state.label()} is not in the rule's domain",
                code="DOMAIN_MISS",
                details={"state": state.label()},
            ) from None

    def length(self, state: AbstractEdge) -> int:
        return len(self.image(state))

    @property
    def positive_states(self) -> tuple[AbstractEdge, ...]:
        return tuple(AbstractEdge(j, 1) for j in range(1, self.m + 1))

    @property
    def has_inverse_states(self) -> bool:
        return any(not state.is_positive for state in self.domain)

    def lines(self) -> list[str]:
        return format_rule(self)


def canonical_domain(m: int, with_inverses: bool) -> tuple[AbstractEdge, ...]:
    """v_1 ... v_m, followed by v_1^-1 ... v_m^-1 when ``with_inverses``."""
    states = [AbstractEdge(j, 1) for j in range(1, m + 1)]
    if with_inverses:
        states += [AbstractEdge(j, -1) for j in range(1, m + 1)]
    return tuple(states)


def rule_from_partition(partition: Partition, skeleton: Skeleton) -> SubstitutionRule:
    """
    Fine rule v_j ↦ P_j, v_j^-1 ↦ P_j^-1.

    When every edge of the partition is positive the rule is restricted to v_1 ... v_m.

    Args:
        partition: Consistent partition
        skeleton: Skeleton the partition was built on

    Returns:
        SubstitutionRule
    """
    m = skeleton.m
    if len(partition) != m:
        raise RuleError(
            "Partition size must equal the skeleton size",
            code="BAD_PARTITION",
            details={"paths": len(partition), "m": m},
        )
    with_inverses = not partition.uses_only_positive_edges
    images = {}
    for j, path in enumerate(partition.paths, start=1):
        images[AbstractEdge(j, 1)] = path
        if with_inverses:
            images[AbstractEdge(j, -1)] = path.reverse()
    return SubstitutionRule(m=m, domain=canonical_domain(m, with_inverses), images=images)


def format_rule(rule: SubstitutionRule) -> list[str]:
    """Canonical text lines ``v1 -> S1(v1) S2(v3^-1) S2(v2^-1)``."""
    return [f"{state.label()} -> {rule.image(state).label()}" for state in rule.domain]


def parse_rule(lines: Iterable[str], m: int) -> SubstitutionRule:
    """
    Parse canonical rule text.

    Args:
        lines: One ``state -> terms`` line per state; blank lines and ``#`` comments are skipped
        m: Skeleton size

    Returns:
        SubstitutionRule with the domain in line order

    Raises:
        RuleError: BAD_RULE_TEXT
    """
    domain: list[AbstractEdge] = []
    images: dict[AbstractEdge, EdgePath] = {}
    for raw in lines:
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        match = _LINE_PATTERN.match(line)
        if not match:
            raise RuleError(f"Malformed rule line '{raw}'", code="BAD_RULE_TEXT")
        state = AbstractEdge.parse(match.group(1))
        if state.index > m:
            raise RuleError(
                f"State {state.label()} exceeds the skeleton size {m}",
                code="BAD_RULE_TEXT",
                details={"line": raw},
            )
        if state in images:
            raise RuleError(
                f"State {state.label()} defined twice", code="BAD_RULE_TEXT", details={"line": raw}
            )
        edges = []
        for term in match.group(2).split():
            term_match = _TERM_PATTERN.match(term)
            if not term_match:
                raise RuleError(
                    f"Malformed term '{term}'", code="BAD_RULE_TEXT", details={"line": raw}
                )
            edges.append(
                LabeledEdge((int(term_match.group(1)),), AbstractEdge.parse(term_match.group(2)))
            )
        domain.append(state)
        images[state] = EdgePath(tuple(edges))
    if not domain:
        raise RuleError("Rule text is empty", code="BAD_RULE_TEXT")
    return SubstitutionRule(m=m, domain=tuple(domain), images=images)


@dataclass(frozen=True)
class RuleCertificate:
    """Evidence that both definitional conditions hold."""

    states: int
    edges: int
    junctions: int
    closed: bool


def validate_rule(
    rule: SubstitutionRule, ifs: IfsSystem, skeleton: Skeleton, tol: Optional[Tolerance] = None
) -> RuleCertificate:
    """
    Check that every P_u consists of edges S_i(v) with v in V and runs from the tail of u to
    its head through chained edges.

    Raises:
        RuleError: BAD_EDGE_FORM(u, position) or BAD_ENDPOINTS(u, position)
    """
    tol = tol or skeleton.tolerance
    domain = set(rule.domain)
    edge_count = 0
    junctions = 0
    for state in rule.domain:
        path = rule.image(state)
        if not path.edges:
            raise RuleError(
                f"Image of {state.label()} is empty",
                code="BAD_EDGE_FORM",
                details={"state": state.label(), "position": 0},
            )
        for position, edge in enumerate(path, start=1):
            if (
                len(edge.word) != 1
                or not 1 <= edge.word[0] <= ifs.size
                or edge.edge not in domain
                or edge.edge.index > skeleton.m
            ):
                raise RuleError(
                    f"Term {position} of {state.label()} is not of the form S_i(v), v in V",
                    code="BAD_EDGE_FORM",
                    details={"state": state.label(), "position": position, "term": edge.label()},
                )

        tail, head = state.endpoints(skeleton)
        pairs = [edge.endpoints(ifs, skeleton) for edge in path]
        checks = [(0, tail, pairs[0][0])]
        checks += [(k, pairs[k - 1][1], pairs[k][0]) for k in range(1, len(pairs))]
        checks.append((len(pairs), pairs[-1][1], head))
        for position, expected, actual in checks:
            if not tol.equal(expected, actual):
                raise RuleError(
                    f"Image of {state.label()} breaks at position {position}",
                    code="BAD_ENDPOINTS",
                    details={
                        "state": state.label(),
                        "position": position,
                        "gap": abs(expected - actual),
                    },
                )
        edge_count += len(path)
        junctions += len(path) - 1

    closed = all(edge.edge in domain for state in rule.domain for edge in rule.image(state))
    return RuleCertificate(
        states=len(rule.domain), edges=edge_count, junctions=junctions, closed=closed
    )


def is_traversing(rule: SubstitutionRule, ifs: IfsSystem) -> bool:
    """
    True iff every P_u uses each map S_1 ... S_N exactly once.
    """
    expected = list(range(1, ifs.size + 1))
    for state in rule.domain:
        letters = sorted(edge.word[0] for edge in rule.image(state))
        if letters != expected:
            return False
    return True


def iterate(rule: SubstitutionRule, path: EdgePath, n: int) -> EdgePath:
    """
    τ^n applied edgewise: τ(S_I(u)) = S_I(τ(u)).

    Args:
        rule: Substitution rule
        path: Input path whose abstract edges lie in the domain
        n: Depth >= 0

    Returns:
        EdgePath: the expanded path

    Raises:
        RuleError: DOMAIN_MISS
    """
    if n < 0:
        raise RuleError("Iteration depth must be >= 0", code="BAD_DEPTH", details={"n": n})
    edges: Sequence[LabeledEdge] = path.edges
    for _ in range(n):
        edges = [child.prefixed(edge.word) for edge in edges for child in rule.image(edge.edge)]
    return EdgePath(tuple(edges))
