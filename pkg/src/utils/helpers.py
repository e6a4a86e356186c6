"""
Helper utilities for numeric parsing, validation and formatting.
"""

import math
from typing import Any

from .errors import ConfigError


class NumericHelpers:
    """
    Helper class for converting between JSON values and planar numbers.
    """

    @staticmethod
    def to_complex(value: Any, field: str = "value") -> complex:
        """
        Parse a ``[re, im]`` pair into a complex number.

        Args:
            value: Two-element list of finite numbers
            field: Field name used in error messages

        Returns:
            complex: Parsed point

        Raises:
            ConfigError: If the value is not a finite two-element numeric pair
        """
        if (
            not isinstance(value, (list, tuple))
            or len(value) != 2
            or any(isinstance(x, bool) or not isinstance(x, (int, float)) for x in value)
        ):
            raise ConfigError(
                f"{field} must be a [re, im] pair of numbers",
                details={"field": field, "value": value},
            )
        z = complex(float(value[0]), float(value[1]))
        if not NumericHelpers.is_finite(z):
            raise ConfigError(f"{field} is not finite", details={"field": field, "value": value})
        return z

    @staticmethod
    def from_complex(z: complex) -> list:
        """Return ``[re, im]`` for JSON output."""
        return [float(z.real), float(z.imag)]

    @staticmethod
    def is_finite(z: complex) -> bool:
        """True when both components are finite."""
        return math.isfinite(z.real) and math.isfinite(z.imag)

    @staticmethod
    def format_float(x: float) -> str:
        """Format a double with 17 significant digits (round-trip exact)."""
        return f"{float(x):.17g}"

    @staticmethod
    def validate_required_fields(data: dict, required_fields: list) -> tuple[bool, list]:
        """
        Validate that all required fields are present.

        Args:
            data: Dictionary to validate
            required_fields: List of required field names

        Returns:
            tuple: (is_valid, list of missing fields)
        """
        missing_fields = [field for field in required_fields if field not in data]
        return len(missing_fields) == 0, missing_fields

    @staticmethod
    def validate_known_fields(data: dict, known_fields: list, context: str) -> None:
        """
        Reject keys outside the schema.

        Raises:
            ConfigError: If ``data`` contains unknown keys
        """
        unknown = sorted(set(data) - set(known_fields))
        if unknown:
            raise ConfigError(
                f"Unknown keys in {context}: {', '.join(unknown)}",
                details={"context": context, "unknown": unknown},
            )
