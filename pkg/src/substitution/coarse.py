"""
Coarse substitution τ*, its incidence matrix and the primitivity test.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .rule import SubstitutionRule


@dataclass(frozen=True)
class CoarseSubstitution:
    """τ*: v_j ↦ |v_{j,1}| ... |v_{j,ℓ_j}| over the alphabet 1..m (map words and signs erased)."""

    m: int
    images: tuple[tuple[int, ...], ...]

    @property
    def incidence(self) -> np.ndarray:
        """M[j][k] = occurrences of v_{k+1} in τ*(v_{j+1})."""
        matrix = np.zeros((self.m, self.m), dtype=np.int64)
        for j, word in enumerate(self.images):
            for letter in word:
                matrix[j, letter - 1] += 1
        return matrix

    def iterate(self, letter: int, k: int) -> tuple[int, ...]:
        """(τ*)^k applied to the one-letter word ``letter``."""
        word = (letter,)
        for _ in range(k):
            word = tuple(child for x in word for child in self.images[x - 1])
        return word

    def lines(self) -> list[str]:
        return [
            f"v{j} -> " + "".join(f"v{letter}" for letter in word)
            for j, word in enumerate(self.images, start=1)
        ]


@dataclass(frozen=True)
class Primitivity:
    """Primitivity verdict with the minimal exponent k such that M^k > 0."""

    primitive: bool
    exponent: Optional[int] = None


def coarse(rule: SubstitutionRule) -> tuple[CoarseSubstitution, np.ndarray]:
    """
    Coarse projection of the rule on v_1 ... v_m.

    Args:
        rule: Fine substitution rule

    Returns:
        tuple: (CoarseSubstitution, incidence matrix)
    """
    images = tuple(
        tuple(edge.edge.index for edge in rule.image(state)) for state in rule.positive_states
    )
    substitution = CoarseSubstitution(m=rule.m, images=images)
    return substitution, substitution.incidence


def is_primitive(matrix: np.ndarray) -> Primitivity:
    """
    Test whether some power M^k, k <= (m-1)^2 + 1, is entrywise positive.

    Args:
        matrix: Square nonnegative integer matrix

    Returns:
        Primitivity: verdict and the minimal exponent
    """
    pattern = (np.asarray(matrix) > 0).astype(np.int64)
    m = pattern.shape[0]
    power = pattern.copy()
    for k in range(1, (m - 1) ** 2 + 2):
        if np.all(power > 0):
            return Primitivity(True, k)
        power = np.minimum(power @ pattern, 1)
    return Primitivity(False, None)
