"""
Planar similitude arithmetic and tolerance-based point identification.

Points are Python complex numbers (``re + im*1j``). A similitude is kept in the normal form
``z -> scale * z + offset`` or, when it reflects, ``z -> scale * conj(z) + offset``.
"""

import math
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from src.config import Config
from src.utils.errors import GeometryError, GraphError
from src.utils.helpers import NumericHelpers

Point = complex


@dataclass(frozen=True)
class Similitude:
    """A planar similarity map in (scale, offset, reflects) normal form."""

    scale: complex
    offset: complex = 0j
    reflects: bool = False

    def __post_init__(self):
        object.__setattr__(self, "scale", complex(self.scale))
        object.__setattr__(self, "offset", complex(self.offset))
        object.__setattr__(self, "reflects", bool(self.reflects))
        if not (NumericHelpers.is_finite(self.scale) and NumericHelpers.is_finite(self.offset)):
            raise GeometryError(
                "Similitude coefficients must be finite",
                details={"scale": repr(self.scale), "offset": repr(self.offset)},
            )
        if self.scale == 0:
            raise GeometryError("Similitude scale must be nonzero", details={"scale": 0})

    @classmethod
    def identity(cls) -> "Similitude":
        return cls(1 + 0j, 0j, False)

    @property
    def ratio(self) -> float:
        """Contraction ratio ``|scale|``."""
        return abs(self.scale)

    @property
    def is_contracting(self) -> bool:
        return 0.0 < self.ratio < 1.0

    def apply(self, p):
        """
        Apply the map to a point or to a numpy array of points.

        Args:
            p: complex point or complex ndarray

        Returns:
            Image point(s), same shape as ``p``
        """
        z = p.conjugate() if self.reflects else p
        return self.scale * z + self.offset

    def compose(self, other: "Similitude") -> "Similitude":
        """Return ``self ∘ other``."""
        if self.reflects:
            scale = self.scale * other.scale.conjugate()
            offset = self.scale * other.offset.conjugate() + self.offset
        else:
            scale = self.scale * other.scale
            offset = self.scale * other.offset + self.offset
        return Similitude(scale, offset, self.reflects != other.reflects)

    def fixed_point(self) -> Point:
        """
        Unique fixed point of a contracting similitude.

        Raises:
            GeometryError: If the map is not contracting
        """
        if not self.is_contracting:
            raise GeometryError(
                "Fixed point requires a contracting map", details={"ratio": self.ratio}
            )
        a, b = self.scale, self.offset
        if self.reflects:
            # z = a*conj(z) + b  =>  z = (a*conj(b) + b) / (1 - |a|^2)
            return (a * b.conjugate() + b) / (1.0 - abs(a) ** 2)
        return b / (1.0 - a)


@dataclass(frozen=True)
class Tolerance:
    """Absolute point-identification radius."""

    epsilon: float

    def __post_init__(self):
        if not (math.isfinite(self.epsilon) and self.epsilon > 0):
            raise GeometryError(
                "Tolerance must be a positive finite number", details={"epsilon": self.epsilon}
            )

    @classmethod
    def for_points(cls, points: Iterable[Point], factor: Optional[float] = None) -> "Tolerance":
        """
        Default tolerance: ``factor`` (CURVE_TOLERANCE_FACTOR) times the diameter of the points.

        Args:
            points: Skeleton points
            factor: Optional override of Config.TOLERANCE_FACTOR

        Returns:
            Tolerance: scaled tolerance
        """
        factor = Config.TOLERANCE_FACTOR if factor is None else factor
        return cls(factor * max(diameter(points), 1.0e-300))

    def equal(self, p: Point, q: Point) -> bool:
        return abs(p - q) <= self.epsilon


def apply(s: Similitude, p: Point) -> Point:
    """Image of ``p`` under ``s``."""
    return s.apply(p)


def compose(s: Similitude, t: Similitude) -> Similitude:
    """Composition ``s ∘ t``."""
    return s.compose(t)


def fixed_point(s: Similitude) -> Point:
    """Fixed point of a contracting similitude."""
    return s.fixed_point()


def points_equal(p: Point, q: Point, tol: Tolerance) -> bool:
    """True iff ``|p - q| <= epsilon``."""
    return tol.equal(p, q)


def diameter(points: Iterable[Point]) -> float:
    """Largest pairwise distance of a finite point set."""
    arr = np.asarray(list(points), dtype=complex)
    if arr.size < 2:
        return 0.0
    return float(np.max(np.abs(arr[:, None] - arr[None, :])))


class PointIndex:
    """
    Snaps points to canonical representatives.

    The first point seen within epsilon becomes the representative, so identification is
    transitive. A point lying farther than epsilon but within ``2 * epsilon`` of an existing
    representative violates the tolerance separation invariant.
    """

    def __init__(self, tol: Tolerance):
        self.tol = tol
        self.points: list[Point] = []

    def __len__(self) -> int:
        return len(self.points)

    def find(self, p: Point) -> Optional[int]:
        """Index of the representative within epsilon of ``p``, if any."""
        for idx, q in enumerate(self.points):
            if abs(p - q) <= self.tol.epsilon:
                return idx
        return None

    def snap(self, p: Point) -> int:
        """
        Return the representative index of ``p``, registering it when new.

        Raises:
            GraphError: DEGENERATE_VERTEXSET when ``p`` is ambiguously close to a representative
        """
        found = self.find(p)
        if found is not None:
            return found
        for idx, q in enumerate(self.points):
            if abs(p - q) <= 2.0 * self.tol.epsilon:
                raise GraphError(
                    "Distinct vertices closer than twice the tolerance",
                    code="DEGENERATE_VERTEXSET",
                    details={
                        "point": NumericHelpers.from_complex(p),
                        "representative": NumericHelpers.from_complex(q),
                        "index": idx,
                        "epsilon": self.tol.epsilon,
                    },
                )
        self.points.append(complex(p))
        return len(self.points) - 1
