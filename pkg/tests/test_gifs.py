"""
Tests for the induced GIFS: bridges, chain condition, linearity and spectral certificates.
"""

import sys
from pathlib import Path

# Add src to path
sys.path.append(str(Path(__file__).parent.parent / "src"))

from collections import Counter

import networkx as nx
import numpy as np
import pytest

import src.gifs
from src.gifs import (
    associate_matrix,
    check_chain_condition,
    check_linearity,
    check_pure_cell_disjointness,
    enumerate_paths,
    expand_set_equation,
    induce_gifs,
    measure_weights,
    perron_iteration,
    simplified_matrix,
    spectral_certify,
)
from src.graphs import AbstractEdge, build_loop
from src.pipeline.catalog import GASKET_RULE
from src.substitution import PureCellWitness, find_pure_cell, iterate, parse_rule
from src.utils import GifsError, RuleError

EXAMPLES = ["terdragon", "gasket", "carpet", "four-star"]


def _radius(values):
    return max(abs(np.linalg.eigvals(values)))


class TestInduceGifs:
    """Test bridge construction."""

    def test_gasket_bridges(self, gasket_gifs):
        """Test six states receiving one bridge per map."""
        assert len(gasket_gifs.states) == 6
        assert len(gasket_gifs.all_bridges()) == 18
        for state in gasket_gifs.states:
            maps = sorted(b.map_index for b in gasket_gifs.incoming(state))
            assert maps == [1, 2, 3], f"State {state.label()} receives maps {maps}"

    def test_bridge_order(self, terdragon_gifs):
        """Test that bridges follow the order of P_u."""
        bridges = terdragon_gifs.outgoing(AbstractEdge(1))
        assert [b.label() for b in bridges] == [
            "(v1, 1, S1, v1)",
            "(v1, 2, S2, v3)",
            "(v1, 3, S2, v1)",
        ]

    def test_bridge_count_violation(self, terdragon):
        """Test BRIDGE_COUNT_VIOLATION when a state receives a map twice."""
        _, ifs, skeleton = terdragon
        rule = parse_rule(
            [
                "v1 -> S1(v1) S1(v3) S2(v1)",
                "v2 -> S2(v2) S3(v1) S3(v2)",
                "v3 -> S3(v3) S1(v2) S1(v3)",
            ],
            3,
        )
        with pytest.raises(GifsError) as excinfo:
            induce_gifs(rule, ifs, skeleton)
        assert excinfo.value.code == "BRIDGE_COUNT_VIOLATION"
        assert excinfo.value.details["state"] == "v3"

    def test_target_outside_domain(self, terdragon):
        """Test DOMAIN_MISS for a bridge into a missing inverse state."""
        _, ifs, skeleton = terdragon
        rule = parse_rule(
            [
                "v1 -> S1(v1^-1) S2(v3) S2(v1)",
                "v2 -> S2(v2) S3(v1) S3(v2)",
                "v3 -> S3(v3) S1(v2) S1(v3)",
            ],
            3,
        )
        with pytest.raises(RuleError) as excinfo:
            induce_gifs(rule, ifs, skeleton)
        assert excinfo.value.code == "DOMAIN_MISS"


class TestChainCondition:
    """Test the chain condition and dictionary-order linearity."""

    def test_gasket_counts(self, gasket_gifs):
        """Test junction, anchor and glued-bridge counts of the gasket."""
        report = check_chain_condition(gasket_gifs)
        assert report.holds
        assert report.junctions == 12
        assert report.anchors == 12
        assert report.bridges == 18
        assert report.glued_bridges == 18

    def test_terdragon_counts(self, terdragon_gifs):
        """Test the terdragon chain condition."""
        report = check_chain_condition(terdragon_gifs)
        assert report.holds
        assert (report.junctions, report.anchors, report.glued_bridges) == (6, 6, 9)

    def test_reordered_bridges_break_chain(self, gasket):
        """Test that swapping two terms is reported, not raised."""
        _, ifs, skeleton = gasket
        lines = ["v1 -> S2(v3^-1) S1(v1) S2(v2^-1)"] + list(GASKET_RULE[1:])
        gifs = induce_gifs(parse_rule(lines, 3), ifs, skeleton)
        report = check_chain_condition(gifs)
        assert not report.holds
        assert report.violations[0].state == "v1"
        assert report.violations[0].kind == "head"
        assert report.glued_bridges < report.bridges

    def test_linearity(self, terdragon_gifs, gasket_gifs):
        """Test that adjacent cylinders meet up to depth 3."""
        for g in (terdragon_gifs, gasket_gifs):
            report = check_linearity(g, max_depth=3)
            assert report.holds, f"Violations: {report.violations[:3]}"
            assert report.pairs_checked > 0

    def test_enumerate_paths(self, terdragon_gifs):
        """Test dictionary order of depth-2 paths."""
        paths = enumerate_paths(terdragon_gifs, AbstractEdge(1), 2)
        assert len(paths) == 9
        assert paths[0].word == (1, 1)
        assert paths[0].orders == (1, 1)
        assert paths[1].word == (1, 2)
        assert paths[1].target == AbstractEdge(3)


class TestSetEquationExpansion:
    """Test that expanding the set equations reproduces symbolic iteration."""

    @pytest.mark.parametrize("depth", [1, 2, 3])
    def test_matches_iteration(self, gasket_gifs, gasket, depth):
        """Test the labeled-edge multiset against τ^n(Λ0)."""
        _, _, skeleton = gasket
        expected = Counter(iterate(gasket_gifs.rule, build_loop(skeleton), depth))
        assert expand_set_equation(gasket_gifs, depth) == expected

    @pytest.mark.parametrize("name", EXAMPLES)
    def test_matches_iteration_for_every_example(self, certified_gifs, name):
        """Test the expansion against symbolic iteration at depths 1 and 2."""
        g = certified_gifs[name]
        loop = build_loop(g.skeleton)
        for depth in (1, 2):
            expected = Counter(iterate(g.rule, loop, depth))
            assert expand_set_equation(g, depth) == expected
            assert sum(expected.values()) == g.skeleton.m * g.ifs.size**depth

    def test_pure_cell_disjointness(self, terdragon_gifs):
        """Test that the witness cylinders lie in the expansion of E_u."""
        witness = find_pure_cell(terdragon_gifs.rule)
        report = check_pure_cell_disjointness(terdragon_gifs, witness)
        assert report.cylinders == ("S[2,1](v1)", "S[2,1](v2)", "S[2,1](v3)")

    def test_invalid_witness(self, terdragon_gifs):
        """Test WITNESS_INVALID for a cell that is not full."""
        witness = PureCellWitness(AbstractEdge(1), (1, 1), 1)
        with pytest.raises(GifsError) as excinfo:
            check_pure_cell_disjointness(terdragon_gifs, witness)
        assert excinfo.value.code == "WITNESS_INVALID"


class TestSpectral:
    """Test associate matrices, Perron iteration and weights."""

    def test_terdragon_matrix(self, terdragon_gifs):
        """Test M(2) of the terdragon."""
        matrix = associate_matrix(terdragon_gifs, terdragon_gifs.dimension)
        assert np.allclose(matrix.values, np.array([[2, 0, 1], [1, 2, 0], [0, 1, 2]]) / 3)
        assert np.allclose(matrix.column_sums, 1.0)
        assert np.allclose(matrix.row_sums, 1.0)

    def test_simplified_matrix(self, gasket_gifs):
        """Test that identifying v_j with v_j^-1 gives a 3 x 3 matrix."""
        matrix = simplified_matrix(gasket_gifs, gasket_gifs.dimension)
        assert matrix.values.shape == (3, 3)
        assert np.allclose(matrix.values, 1 / 3)

    def test_perron_iteration(self):
        """Test the radius and bounds against numpy eigenvalues."""
        values = np.array([[1.0, 2.0], [3.0, 4.0]])
        estimate = perron_iteration(values)
        assert estimate.converged
        expected = max(abs(np.linalg.eigvals(values)))
        assert abs(estimate.radius - expected) < 1e-9
        assert estimate.lower <= expected + 1e-9
        assert estimate.upper >= expected - 1e-9

    def test_perron_iteration_cap(self):
        """Test that a tight iteration cap reports non-convergence."""
        estimate = perron_iteration(np.array([[1.0, 2.0], [3.0, 4.0]]), max_iterations=1)
        assert not estimate.converged

    @pytest.mark.parametrize("name", ["terdragon", "gasket", "carpet", "four-star"])
    def test_certificate(self, certified_gifs, name):
        """Test ρ(M(s)) = 1 with unit column sums for every built-in example."""
        certificate = spectral_certify(certified_gifs[name])
        assert abs(certificate.spectral_radius - 1.0) < 1e-9
        assert abs(certificate.simplified_radius - 1.0) < 1e-9
        assert abs(certificate.column_sum_min - 1.0) < 1e-12
        assert abs(certificate.column_sum_max - 1.0) < 1e-12
        assert certificate.strongly_connected
        assert not certificate.conditional

    def test_radius_reported_only_by_certificate(self):
        """Test that the radius is exposed through SpectralCertificate, not a free helper."""
        assert "spectral_radius" not in src.gifs.__all__
        assert "spectral_radius" in src.gifs.SpectralCertificate.__dataclass_fields__

    @pytest.mark.parametrize("name", EXAMPLES)
    def test_deleting_a_bridge_breaks_certificate(self, certified_gifs, name):
        """Test that every single-bridge deletion fails certification and lowers the radius."""
        g = certified_gifs[name]
        for bridge in g.all_bridges():
            pruned = g.without_bridge(bridge)
            with pytest.raises(GifsError) as excinfo:
                spectral_certify(pruned)
            assert excinfo.value.code == "SPECTRAL_MISMATCH"
            values = associate_matrix(pruned, pruned.dimension).values
            digraph = nx.from_numpy_array(values > 0, create_using=nx.DiGraph)
            if nx.is_strongly_connected(digraph):
                assert _radius(values) < 1.0
            else:
                assert _radius(values) <= 1.0 + 1e-9

    @pytest.mark.parametrize("name", EXAMPLES)
    def test_radius_crosses_one_at_dimension(self, certified_gifs, name):
        """Test ρ(M(s - 0.1)) > 1 > ρ(M(s + 0.1))."""
        g = certified_gifs[name]
        below = _radius(associate_matrix(g, g.dimension - 0.1).values)
        above = _radius(associate_matrix(g, g.dimension + 0.1).values)
        assert below > 1.0 > above
        assert perron_iteration(associate_matrix(g, g.dimension - 0.1).values).radius > 1.0

    def test_uniform_weights(self, terdragon_gifs, gasket_gifs):
        """Test h = 1/3 on every state of the terdragon and the gasket."""
        for g in (terdragon_gifs, gasket_gifs):
            weights = measure_weights(g)
            assert np.allclose(weights.values, 1 / 3)
            assert weights.residual < 1e-12

    def test_weight_normalization(self, certified_gifs):
        """Test Σ_j h_{v_j} = 1 and positivity."""
        for name, g in certified_gifs.items():
            weights = measure_weights(g)
            total = sum(weights.of(state) for state in g.rule.positive_states)
            assert abs(total - 1.0) < 1e-12, f"{name}: sum {total}"
            assert np.all(weights.values > 0)
            assert weights.residual < 1e-9


if __name__ == "__main__":
    pytest.main([__file__])
