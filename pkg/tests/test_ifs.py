"""
Tests for the IFS container, skeleton validation and the similarity dimension.
"""

import sys
from pathlib import Path

# Add src to path
sys.path.append(str(Path(__file__).parent.parent / "src"))

import math

import pytest

from src.geometry import Similitude, Tolerance
from src.ifs import IfsSystem, hata_graph, similarity_dimension, validate_skeleton
from src.utils import GeometryError, SkeletonError


def _cantor_like():
    return IfsSystem((Similitude(1 / 3), Similitude(1 / 3, 2 / 3)), "cantor")


class TestIfsSystem:
    """Test IfsSystem construction and word maps."""

    def test_needs_two_maps(self):
        """Test that a single map is rejected."""
        with pytest.raises(GeometryError):
            IfsSystem((Similitude(0.5),))

    def test_rejects_non_contracting(self):
        """Test NOT_CONTRACTING with the offending map index."""
        with pytest.raises(GeometryError) as excinfo:
            IfsSystem((Similitude(0.5), Similitude(1.0, 1.0)))
        assert excinfo.value.code == "NOT_CONTRACTING"
        assert excinfo.value.details["map"] == 2

    def test_word_map(self, terdragon):
        """Test S1∘S2 on the terdragon: S1(S2(a3)) = 1."""
        _, ifs, skeleton = terdragon
        s12 = ifs.word_map((1, 2))
        assert abs(s12.apply(skeleton.point(3)) - 1) < 1e-12
        assert ifs.word_map(()) == Similitude.identity()

    def test_level_one_vertices(self, terdragon):
        """Test the map-major order of level-1 vertices."""
        _, ifs, skeleton = terdragon
        vertices = ifs.level_one_vertices(skeleton.points)
        assert len(vertices) == 9
        assert vertices[1] == ifs.map(1).apply(skeleton.point(2))


class TestSkeletonValidation:
    """Test skeleton validation through coverage and the Hata graph."""

    def test_terdragon_skeleton(self, terdragon):
        """Test the terdragon skeleton and its certificates."""
        _, _, skeleton = terdragon
        assert skeleton.m == 3
        assert abs(skeleton.point(1) - (1.5 + math.sqrt(3) / 2 * 1j)) < 1e-12
        assert abs(skeleton.point(3) - (-math.sqrt(3) * 1j)) < 1e-12
        assert skeleton.point(4) == skeleton.point(1)
        assert len(skeleton.spanning_tree) == 2
        assert math.isclose(skeleton.tolerance.epsilon, 3e-9, rel_tol=1e-9)
        assert all(skeleton.preimage_table), "Every point must have a preimage"

    def test_terdragon_hata_graph_is_complete(self, terdragon):
        """Test that all three cells meet at the origin."""
        _, ifs, skeleton = terdragon
        graph = hata_graph(ifs, skeleton.points, skeleton.tolerance)
        assert graph.edges == frozenset({(1, 2), (1, 3), (2, 3)})
        assert graph.is_connected()

    @pytest.mark.parametrize("name", ["terdragon", "gasket", "carpet", "four_star"])
    def test_hata_graph_follows_map_permutation(self, request, name):
        """Test that relabeling the maps relabels the Hata graph and nothing else."""
        _, ifs, skeleton = request.getfixturevalue(name)
        order = list(range(ifs.size, 0, -1))
        order = order[1:] + order[:1]
        permuted = IfsSystem(tuple(ifs.map(k) for k in order))
        original = hata_graph(ifs, skeleton.points, skeleton.tolerance)
        relabeled = hata_graph(permuted, skeleton.points, skeleton.tolerance)
        mapped = frozenset(
            tuple(sorted((order[i - 1], order[j - 1]))) for i, j in relabeled.edges
        )
        assert mapped == original.edges
        assert relabeled.is_connected() == original.is_connected()

    def test_too_few_points(self, terdragon):
        """Test REJECT_TOO_FEW_POINTS."""
        _, ifs, _ = terdragon
        with pytest.raises(SkeletonError) as excinfo:
            validate_skeleton(ifs, [0j])
        assert excinfo.value.code == "REJECT_TOO_FEW_POINTS"

    def test_duplicate_points(self, terdragon):
        """Test REJECT_DUPLICATE_POINTS."""
        _, ifs, skeleton = terdragon
        pts = list(skeleton.points) + [skeleton.point(2)]
        with pytest.raises(SkeletonError) as excinfo:
            validate_skeleton(ifs, pts)
        assert excinfo.value.code == "REJECT_DUPLICATE_POINTS"
        assert excinfo.value.details == {"first": 2, "second": 4}

    def test_perturbed_point_is_not_covered(self, terdragon):
        """Test that moving a1 by ten tolerances breaks coverage."""
        _, ifs, skeleton = terdragon
        pts = list(skeleton.points)
        pts[0] += 10 * skeleton.tolerance.epsilon
        with pytest.raises(SkeletonError) as excinfo:
            validate_skeleton(ifs, pts, skeleton.tolerance)
        assert excinfo.value.code == "REJECT_NOT_COVERED"
        assert excinfo.value.details["point"] == 1

    def test_disconnected(self):
        """Test REJECT_DISCONNECTED on a Cantor-type system."""
        with pytest.raises(SkeletonError) as excinfo:
            validate_skeleton(_cantor_like(), [0j, 1 + 0j])
        assert excinfo.value.code == "REJECT_DISCONNECTED"
        assert excinfo.value.details["components"] == [[1], [2]]

    def test_explicit_tolerance(self, gasket):
        """Test that an explicit tolerance is kept."""
        config, ifs, _ = gasket
        skeleton = validate_skeleton(ifs, config.skeleton, Tolerance(1e-7))
        assert skeleton.tolerance.epsilon == 1e-7


class TestSimilarityDimension:
    """Test the Moran equation solver."""

    @pytest.mark.parametrize(
        "name, expected",
        [
            ("terdragon", 2.0),
            ("gasket", math.log(3) / math.log(2)),
            ("carpet", math.log(8) / math.log(3)),
            ("four_star", 2.0),
        ],
    )
    def test_dimension(self, request, name, expected):
        """Test the similarity dimension of every built-in example."""
        _, ifs, _ = request.getfixturevalue(name)
        assert abs(similarity_dimension(ifs) - expected) < 1e-10

    def test_dimension_increases_with_ratios(self):
        """Test that enlarging any contraction ratio raises the dimension."""
        ratios = [0.2, 0.3, 0.25, 0.35]
        base = similarity_dimension(
            IfsSystem(tuple(Similitude(r, complex(k, 0)) for k, r in enumerate(ratios)))
        )
        for index in range(len(ratios)):
            for step in (0.01, 0.1):
                grown = list(ratios)
                grown[index] += step
                maps = tuple(Similitude(r, complex(k, 0)) for k, r in enumerate(grown))
                assert similarity_dimension(IfsSystem(maps)) > base

        contractions = (0.1, 0.2, 0.3, 0.4)
        uniform = [
            similarity_dimension(IfsSystem((Similitude(c), Similitude(c, 1 - c))))
            for c in contractions
        ]
        assert uniform == sorted(uniform)
        for d, c in zip(uniform, contractions):
            assert math.isclose(d, math.log(2) / -math.log(c), rel_tol=1e-9)

    def test_cantor(self):
        """Test log 2 / log 3."""
        assert abs(similarity_dimension(_cantor_like()) - math.log(2) / math.log(3)) < 1e-10


if __name__ == "__main__":
    pytest.main([__file__])
