"""
The ordered graph-directed IFS induced by a substitution rule.

State u carries the set equation E_u = S_{u,1}(E_{v_{u,1}}) + ... + S_{u,ℓ_u}(E_{v_{u,ℓ_u}}); each
term is a bridge (u, k, S_{u,k}, v_{u,k}). Invariant sets are never materialized.
"""

from collections import Counter
from dataclasses import dataclass, replace
from typing import Mapping, Optional

from src.graphs import AbstractEdge
from src.ifs import IfsSystem, Skeleton, similarity_dimension
from src.substitution import SubstitutionRule
from src.utils import GifsError, Logger, RuleError

logger = Logger.get_logger(__name__)


@dataclass(frozen=True)
class Bridge:
    """The k-th term of P_u: (u, k, S_map_index, v)."""

    source: AbstractEdge
    order: int
    map_index: int
    target: AbstractEdge

    def label(self) -> str:
        return f"({self.source.label()}, {self.order}, S{self.map_index}, {self.target.label()})"


@dataclass(frozen=True)
class InducedGifs:
    ifs: IfsSystem
    skeleton: Skeleton
    rule: SubstitutionRule
    states: tuple[AbstractEdge, ...]
    bridges: Mapping[AbstractEdge, tuple[Bridge, ...]]
    dimension: float
    weights: Optional[Mapping[AbstractEdge, float]] = None

    def all_bridges(self) -> tuple[Bridge, ...]:
        return tuple(b for state in self.states for b in self.bridges[state])

    def outgoing(self, state: AbstractEdge) -> tuple[Bridge, ...]:
        return self.bridges[state]

    def incoming(self, state: AbstractEdge) -> tuple[Bridge, ...]:
        return tuple(b for b in self.all_bridges() if b.target == state)

    @property
    def state_index(self) -> dict:
        return {state: idx for idx, state in enumerate(self.states)}

    def ratio(self, bridge: Bridge) -> float:
        return self.ifs.map(bridge.map_index).ratio

    def with_weights(self, weights: Mapping[AbstractEdge, float]) -> "InducedGifs":
        return replace(self, weights=dict(weights))

    def without_bridge(self, bridge: Bridge) -> "InducedGifs":
        """Copy with one bridge removed (orders of the remaining bridges unchanged)."""
        pruned = {
            state: tuple(b for b in self.bridges[state] if b != bridge) for state in self.states
        }
        return replace(self, bridges=pruned)


def induce_gifs(rule: SubstitutionRule, ifs: IfsSystem, skeleton: Skeleton) -> InducedGifs:
    """
    Build the bridge set and check that every state receives exactly N bridges whose maps are
    a permutation of S_1 ... S_N.

    Args:
        rule: Valid substitution rule
        ifs: The IFS
        skeleton: Skeleton of the rule

    Returns:
        InducedGifs: with dimension set and weights unset

    Raises:
        RuleError: DOMAIN_MISS when a bridge targets a state outside the domain
        GifsError: BRIDGE_COUNT_VIOLATION(v)
    """
    domain = set(rule.domain)
    bridges = {}
    for state in rule.domain:
        terms = []
        for order, edge in enumerate(rule.image(state), start=1):
            if edge.edge not in domain:
                raise RuleError(
                    f"Bridge target {edge.edge.label()} is not a state",
                    code="DOMAIN_MISS",
                    details={"state": state.label(), "order": order},
                )
            terms.append(Bridge(state, order, edge.word[0], edge.edge))
        bridges[state] = tuple(terms)

    expected = Counter(range(1, ifs.size + 1))
    incoming = {state: Counter() for state in rule.domain}
    for terms in bridges.values():
        for bridge in terms:
            incoming[bridge.target][bridge.map_index] += 1
    for state in rule.domain:
        if incoming[state] != expected:
            Logger.log_certificate_issue(
                logger, "BRIDGE_COUNT_VIOLATION", {"state": state.label()}
            )
            raise GifsError(
                f"State {state.label()} does not receive exactly one bridge per map",
                code="BRIDGE_COUNT_VIOLATION",
                details={
                    "state": state.label(),
                    "incoming_maps": sorted(incoming[state].elements()),
                },
            )

    gifs = InducedGifs(
        ifs=ifs,
        skeleton=skeleton,
        rule=rule,
        states=rule.domain,
        bridges=bridges,
        dimension=similarity_dimension(ifs),
    )
    Logger.log_stage(
        logger,
        "induce_gifs",
        "ok",
        states=len(gifs.states),
        bridges=len(gifs.all_bridges()),
    )
    return gifs
