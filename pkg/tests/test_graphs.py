"""
Tests for loop edges, the induced graph and the consistent-partition search.
"""

import sys
from pathlib import Path

# Add src to path
sys.path.append(str(Path(__file__).parent.parent / "src"))

import pytest

from src.geometry import Similitude, Tolerance
from src.graphs import (
    AbstractEdge,
    EdgePath,
    LabeledEdge,
    OrientationVector,
    Partition,
    Verdict,
    affine_copy,
    build_loop,
    enumerate_consistent_partitions,
    find_consistent_partition,
    induced_graph,
    is_consistent,
    is_partition_of,
    reverse_partition,
    search_orientation,
)
from src.ifs import HataGraph, IfsSystem, Skeleton, validate_skeleton
from src.substitution import RuleCertifier
from src.utils import GraphError, RuleError, SearchExhausted

TERDRAGON_PARTITION = [
    "P1 = S1(v1) S2(v3) S2(v1)",
    "P2 = S2(v2) S3(v1) S3(v2)",
    "P3 = S3(v3) S1(v2) S1(v3)",
]


class TestEdges:
    """Test abstract edges, labeled edges and paths."""

    def test_abstract_edge(self):
        """Test parse, label, inverse and cyclic endpoints."""
        v3 = AbstractEdge.parse("v3")
        assert v3 == AbstractEdge(3, 1)
        assert v3.endpoint_indices(3) == (3, 1)
        assert v3.inverse().endpoint_indices(3) == (1, 3)
        assert v3.inverse().label() == "v3^-1"
        assert AbstractEdge.parse("v12^-1") == AbstractEdge(12, -1)

    def test_abstract_edge_rejects_bad_input(self):
        """Test malformed states."""
        with pytest.raises(RuleError):
            AbstractEdge.parse("w1")
        with pytest.raises(RuleError):
            AbstractEdge(0, 1)

    def test_labeled_edge_labels(self):
        """Test one-letter and longer word labels."""
        edge = LabeledEdge((1,), AbstractEdge(2, -1))
        assert edge.label() == "S1(v2^-1)"
        assert edge.prefixed((3,)).label() == "S[3,1](v2^-1)"
        assert edge.inverse().inverse() == edge
        assert LabeledEdge((), AbstractEdge(1)).label() == "v1"

    def test_path_reverse(self):
        """Test edgewise reversal."""
        path = EdgePath((LabeledEdge((1,), AbstractEdge(1)), LabeledEdge((2,), AbstractEdge(3))))
        assert path.reverse().label() == "S2(v3^-1) S1(v1^-1)"
        assert path.reverse().reverse() == path

    def test_loop_and_affine_copy(self, terdragon):
        """Test Λ0 and its affine copies."""
        _, ifs, skeleton = terdragon
        loop = build_loop(skeleton)
        assert loop.label() == "v1 v2 v3"
        assert loop.first_break(ifs, skeleton, skeleton.tolerance) is None
        points = loop.points(ifs, skeleton)
        assert points[0] == points[-1] == skeleton.point(1)

        copy = affine_copy((2,), loop)
        assert copy.label() == "S2(v1) S2(v2) S2(v3)"
        assert affine_copy((1,), LabeledEdge((2,), AbstractEdge(1))).word == (1, 2)
        assert [p.label() for p in affine_copy((3,), [loop])] == ["S3(v1) S3(v2) S3(v3)"]

    def test_first_break(self, terdragon):
        """Test that a non-chained path reports its break position."""
        _, ifs, skeleton = terdragon
        path = EdgePath((LabeledEdge((1,), AbstractEdge(1)), LabeledEdge((1,), AbstractEdge(3))))
        assert path.first_break(ifs, skeleton, skeleton.tolerance) == 0


class TestOrientationVector:
    """Test orientation vectors."""

    def test_gray_code_order(self):
        """Test that consecutive vectors differ in one sign."""
        order = list(OrientationVector.gray_code(3))
        assert [o.signs for o in order[:4]] == [
            (1, 1, 1),
            (-1, 1, 1),
            (-1, -1, 1),
            (1, -1, 1),
        ]
        assert len({o.signs for o in order}) == 8
        for a, b in zip(order[:-1], order[1:]):
            assert sum(x != y for x, y in zip(a.signs, b.signs)) == 1

    def test_rejects_bad_entries(self):
        """Test BAD_ORIENTATION."""
        with pytest.raises(GraphError) as excinfo:
            OrientationVector((1, 0))
        assert excinfo.value.code == "BAD_ORIENTATION"

    def test_negated_and_str(self):
        """Test negation and the textual form."""
        beta = OrientationVector((1, -1, -1))
        assert str(beta) == "(1,-1,-1)"
        assert beta.negated().signs == (-1, 1, 1)


class TestInducedGraph:
    """Test G(S, A, β)."""

    def test_terdragon_graph(self, terdragon):
        """Test edge and vertex counts of the terdragon graph."""
        _, ifs, skeleton = terdragon
        graph = induced_graph(ifs, skeleton, OrientationVector.positive(3))
        assert len(graph.edges) == 9
        assert len(graph.vertices) == 7
        assert graph.anchors == (0, 1, 2)
        assert graph.is_balanced()
        assert graph.is_connected()
        assert [e.label() for e in graph.cells[1]] == ["S2(v1)", "S2(v2)", "S2(v3)"]

    def test_negative_cell_loop(self, gasket_graph):
        """Test that a negative sign walks the cell loop backwards."""
        assert [e.label() for e in gasket_graph.cells[1]] == [
            "S2(v3^-1)",
            "S2(v2^-1)",
            "S2(v1^-1)",
        ]

    def test_out_edges_are_tie_break_sorted(self, terdragon):
        """Test the (cell, edge index, direction) order of out-edges."""
        _, ifs, skeleton = terdragon
        graph = induced_graph(ifs, skeleton, OrientationVector.positive(3))
        for eids in graph.out_edges.values():
            keys = [graph.edge_key(eid) for eid in eids]
            assert keys == sorted(keys)

    def test_wrong_length(self, terdragon):
        """Test that β must have one entry per map."""
        _, ifs, skeleton = terdragon
        with pytest.raises(GraphError) as excinfo:
            induced_graph(ifs, skeleton, OrientationVector((1, 1)))
        assert excinfo.value.code == "BAD_ORIENTATION"


class TestPartitionSearch:
    """Test the consistent-partition search."""

    def test_terdragon_first_partition(self, terdragon):
        """Test the lexicographically first partition at β = (1,1,1)."""
        _, ifs, skeleton = terdragon
        graph = induced_graph(ifs, skeleton, OrientationVector.positive(3))
        partition = find_consistent_partition(graph, skeleton)
        assert partition.lines() == TERDRAGON_PARTITION
        assert partition.uses_only_positive_edges
        assert is_consistent(partition, graph)

    def test_reversal_duality(self, terdragon):
        """Test that reversed paths partition G(S, A, -β)."""
        _, ifs, skeleton = terdragon
        beta = OrientationVector.positive(3)
        partition = find_consistent_partition(induced_graph(ifs, skeleton, beta))
        reversed_partition = reverse_partition(partition)
        assert reversed_partition.beta == beta.negated()
        assert is_partition_of(
            reversed_partition.paths, induced_graph(ifs, skeleton, beta.negated())
        )

    def test_enumeration_limit_and_uniqueness(self, terdragon):
        """Test that enumerated partitions are distinct and consistent."""
        _, ifs, skeleton = terdragon
        graph = induced_graph(ifs, skeleton, OrientationVector.positive(3))
        partitions = list(enumerate_consistent_partitions(graph, limit=3))
        assert 1 <= len(partitions) <= 3
        assert len({p.paths for p in partitions}) == len(partitions)
        assert all(is_consistent(p, graph) for p in partitions)

    def test_gasket_rule_paths_are_consistent(self, gasket_graph, gasket_rule):
        """Test that the gasket rule's images partition G(S, A, (1,-1,-1))."""
        paths = tuple(gasket_rule.image(state) for state in gasket_rule.positive_states)
        partition = Partition(beta=gasket_graph.beta, paths=paths)
        assert is_consistent(partition, gasket_graph)

    def test_incomplete_paths_are_not_a_partition(self, terdragon):
        """Test that dropping an edge breaks the partition property."""
        _, ifs, skeleton = terdragon
        graph = induced_graph(ifs, skeleton, OrientationVector.positive(3))
        partition = find_consistent_partition(graph)
        truncated = (EdgePath(partition.paths[0].edges[:-1]),) + partition.paths[1:]
        assert not is_partition_of(truncated, graph)

    def test_large_grid_search_stays_flat(self):
        """Test that 289 maps (1156 edges) end in a partition or NOT_FOUND, never a crash."""
        n = 17
        ifs = IfsSystem(
            tuple(Similitude(1 / n, complex(x / n, y / n)) for y in range(n) for x in range(n))
        )
        skeleton = validate_skeleton(ifs, (0.5 + 0j, 1 + 0.5j, 0.5 + 1j, 0.5j))
        graph = induced_graph(ifs, skeleton, OrientationVector.positive(ifs.size))
        assert len(graph.edges) == 1156
        try:
            partition = find_consistent_partition(graph, node_budget=200000)
        except GraphError as e:
            assert e.code == "NOT_FOUND"
            assert e.details["nodes"] <= 200001
        else:
            assert is_consistent(partition, graph)

    def test_disconnected_graph_not_found(self):
        """Test NOT_FOUND on a disconnected induced graph."""
        ifs = IfsSystem((Similitude(1 / 3), Similitude(1 / 3, 2 / 3)))
        skeleton = Skeleton(
            points=(0j, 1 + 0j),
            preimage_table=(),
            tolerance=Tolerance(1e-9),
            hata=HataGraph((1, 2), frozenset()),
        )
        graph = induced_graph(ifs, skeleton, OrientationVector.positive(2))
        with pytest.raises(GraphError) as excinfo:
            find_consistent_partition(graph)
        assert excinfo.value.code == "NOT_FOUND"
        assert excinfo.value.details["connected"] is False


class TestSearchOrientation:
    """Test the gray-code orientation search."""

    def test_terdragon_accepted_at_positive_beta(self, terdragon_search):
        """Test that (1,1,1) is accepted first."""
        assert terdragon_search.beta.signs == (1, 1, 1)
        assert terdragon_search.attempts == ()
        assert terdragon_search.partition.lines() == TERDRAGON_PARTITION
        assert terdragon_search.verdict.accepted

    def test_gasket_found_without_explicit_rule(self, gasket):
        """Test that the search alone finds a certified gasket partition after rejecting (1,1,1)."""
        _, ifs, skeleton = gasket
        found = search_orientation(ifs, skeleton, RuleCertifier(skeleton))
        assert found.verdict.accepted
        assert found.attempts[0]["beta"] == [1, 1, 1]
        assert found.beta.signs != (1, 1, 1)
        assert is_consistent(found.partition, induced_graph(ifs, skeleton, found.beta))

    def test_explicit_betas(self, terdragon):
        """Test that only the given orientation vectors are tried."""
        _, ifs, skeleton = terdragon
        with pytest.raises(SearchExhausted) as excinfo:
            search_orientation(
                ifs, skeleton, RuleCertifier(skeleton), betas=[OrientationVector((1, 1))]
            )
        attempts = excinfo.value.details["attempts"]
        assert len(attempts) == 1
        assert attempts[0]["reason"].startswith("BAD_ORIENTATION")

    def test_budget_exhaustion(self, terdragon):
        """Test EXHAUSTED with one attempt per orientation vector."""
        _, ifs, skeleton = terdragon
        with pytest.raises(SearchExhausted) as excinfo:
            search_orientation(ifs, skeleton, RuleCertifier(skeleton), node_budget=1)
        assert excinfo.value.code == "EXHAUSTED"
        assert len(excinfo.value.details["attempts"]) == 8

    def test_rejecting_certifier_exhausts(self, terdragon):
        """Test that the failure log carries the certifier's reasons."""
        _, ifs, skeleton = terdragon
        with pytest.raises(SearchExhausted) as excinfo:
            search_orientation(
                ifs,
                skeleton,
                lambda partition: Verdict(False, "rejected"),
                betas=[OrientationVector.positive(3)],
                max_partitions=2,
            )
        attempt = excinfo.value.details["attempts"][0]
        assert attempt["beta"] == [1, 1, 1]
        assert "rejected" in attempt["reason"]


if __name__ == "__main__":
    pytest.main([__file__])
