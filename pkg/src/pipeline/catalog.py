"""
Built-in example catalog: terdragon, Sierpiński gasket, Sierpiński carpet and the four-star tile.
"""

import cmath
import math
from pathlib import Path
from typing import Optional, Union

from src.geometry import Similitude
from src.utils import ConfigError, Logger

from .job_config import JobConfig

logger = Logger.get_logger(__name__)

GASKET_RULE = (
    "v1 -> S1(v1) S2(v3^-1) S2(v2^-1)",
    "v2 -> S2(v1^-1) S1(v2) S3(v3^-1)",
    "v3 -> S3(v2^-1) S3(v1^-1) S1(v3)",
    "v1^-1 -> S2(v2) S2(v3) S1(v1^-1)",
    "v2^-1 -> S3(v3) S1(v2^-1) S2(v1)",
    "v3^-1 -> S1(v3^-1) S3(v1) S3(v2)",
)


def terdragon() -> JobConfig:
    """S_j(z) = λz + ω^{j-1} with λ = e^{iπ/6}/√3, skeleton {-ω²/λ, -1/λ, -ω/λ}."""
    lam = cmath.exp(1j * math.pi / 6) / math.sqrt(3)
    omega = cmath.exp(2j * math.pi / 3)
    maps = tuple(Similitude(lam, omega**j) for j in range(3))
    skeleton = (-(omega**2) / lam, -1 / lam, -omega / lam)
    return JobConfig(name="terdragon", maps=maps, skeleton=skeleton, mode="auto-search", depth=6)


def gasket() -> JobConfig:
    """S_i(z) = (z + a_i)/2 on the triangle 0, 1, e^{iπ/3}, with the β = (1,-1,-1) rule."""
    skeleton = (0j, 1 + 0j, cmath.exp(1j * math.pi / 3))
    maps = tuple(Similitude(0.5, a / 2) for a in skeleton)
    return JobConfig(
        name="gasket",
        maps=maps,
        skeleton=skeleton,
        mode="explicit-rule",
        rule=GASKET_RULE,
        depth=3,
    )


def carpet() -> JobConfig:
    """Eight homotheties of ratio 1/3 (center omitted), skeleton at the edge midpoints."""
    offsets = (
        (0, 0),
        (1, 0),
        (2, 0),
        (2, 1),
        (2, 2),
        (1, 2),
        (0, 2),
        (0, 1),
    )
    maps = tuple(Similitude(1 / 3, complex(x / 3, y / 3)) for x, y in offsets)
    skeleton = (0.5 + 0j, 1 + 0.5j, 0.5 + 1j, 0.5j)
    return JobConfig(name="carpet", maps=maps, skeleton=skeleton, mode="auto-search", depth=4)


def four_star() -> JobConfig:
    """
    S_j(z) = -z/2 + d_j with d = (0, e^{iπ/6}, e^{5iπ/6}, -i).

    The skeleton is the orbit of the fixed points of S_2∘S_1 and S_1∘S_2 under the tile's
    three-fold rotation: radii 4/3 and 2/3 at angles 30° + 60°k.
    """
    offsets = (0j, cmath.exp(1j * math.pi / 6), cmath.exp(5j * math.pi / 6), -1j)
    maps = tuple(Similitude(-0.5, d) for d in offsets)
    radii = (4 / 3, 2 / 3, 4 / 3, 2 / 3, 4 / 3, 2 / 3)
    skeleton = tuple(
        r * cmath.exp(1j * math.radians(30 + 60 * k)) for k, r in enumerate(radii)
    )
    return JobConfig(name="four-star", maps=maps, skeleton=skeleton, mode="auto-search", depth=5)


_CATALOG = {
    "terdragon": terdragon,
    "gasket": gasket,
    "carpet": carpet,
    "four-star": four_star,
}


def list_examples() -> dict[str, JobConfig]:
    """All built-in configurations, in catalog order."""
    return {name: build() for name, build in _CATALOG.items()}


def get_example(name: str) -> JobConfig:
    """
    Built-in configuration by name.

    Raises:
        ConfigError: UNKNOWN_EXAMPLE
    """
    try:
        return _CATALOG[name]()
    except KeyError:
        raise ConfigError(
            f"Unknown example '{name}'",
            code="UNKNOWN_EXAMPLE",
            details={"available": list(_CATALOG)},
        ) from None


def export_example(name: str, path: Optional[Union[str, Path]] = None) -> str:
    """
    Serialize a built-in configuration; write it to ``path`` when given.

    Returns:
        str: the JSON text
    """
    text = get_example(name).to_json()
    if path is not None:
        out = Path(path)
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text, encoding="utf-8")
        logger.info(f"Example {name} exported to {out}")
    return text
