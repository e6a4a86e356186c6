"""
pytest configuration and shared fixtures built from the example catalog.
"""

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from src.gifs import induce_gifs, measure_weights  # noqa: E402
from src.graphs import OrientationVector, induced_graph, search_orientation  # noqa: E402
from src.ifs import validate_skeleton  # noqa: E402
from src.pipeline import get_example  # noqa: E402
from src.substitution import RuleCertifier, parse_rule  # noqa: E402


def _prepared(name):
    config = get_example(name)
    ifs = config.build_ifs()
    skeleton = validate_skeleton(ifs, config.skeleton)
    return config, ifs, skeleton


@pytest.fixture(scope="session")
def terdragon():
    """(config, ifs, skeleton) of the terdragon."""
    return _prepared("terdragon")


@pytest.fixture(scope="session")
def gasket():
    """(config, ifs, skeleton) of the Sierpiński gasket."""
    return _prepared("gasket")


@pytest.fixture(scope="session")
def carpet():
    """(config, ifs, skeleton) of the Sierpiński carpet with edge midpoints."""
    return _prepared("carpet")


@pytest.fixture(scope="session")
def four_star():
    """(config, ifs, skeleton) of the four-star tile."""
    return _prepared("four-star")


@pytest.fixture(scope="session")
def terdragon_search(terdragon):
    """Accepted orientation search result for the terdragon."""
    _, ifs, skeleton = terdragon
    return search_orientation(ifs, skeleton, RuleCertifier(skeleton))


@pytest.fixture(scope="session")
def terdragon_rule(terdragon_search):
    return terdragon_search.verdict.payload.rule


@pytest.fixture(scope="session")
def gasket_rule(gasket):
    config, _, skeleton = gasket
    return parse_rule(config.rule, skeleton.m)


@pytest.fixture(scope="session")
def gasket_graph(gasket):
    """G(S, A, β) of the gasket at β = (1, -1, -1)."""
    _, ifs, skeleton = gasket
    return induced_graph(ifs, skeleton, OrientationVector((1, -1, -1)))


def _weighted(rule, ifs, skeleton):
    gifs = induce_gifs(rule, ifs, skeleton)
    return gifs.with_weights(measure_weights(gifs).as_dict())


@pytest.fixture(scope="session")
def terdragon_gifs(terdragon, terdragon_rule):
    _, ifs, skeleton = terdragon
    return _weighted(terdragon_rule, ifs, skeleton)


@pytest.fixture(scope="session")
def gasket_gifs(gasket, gasket_rule):
    _, ifs, skeleton = gasket
    return _weighted(gasket_rule, ifs, skeleton)


@pytest.fixture(scope="session")
def certified_gifs(terdragon, gasket, carpet, four_star, terdragon_rule, gasket_rule):
    """Weighted GIFS of every built-in example, keyed by name."""
    result = {
        "terdragon": _weighted(terdragon_rule, terdragon[1], terdragon[2]),
        "gasket": _weighted(gasket_rule, gasket[1], gasket[2]),
    }
    for name, (_, ifs, skeleton) in (("carpet", carpet), ("four-star", four_star)):
        found = search_orientation(ifs, skeleton, RuleCertifier(skeleton))
        result[name] = _weighted(found.verdict.payload.rule, ifs, skeleton)
    return result
