"""
Error hierarchy shared by every stage of the curve construction engine.

Each error carries a machine-readable ``code`` (for example ``REJECT_NOT_COVERED``), the pipeline
``stage`` that raised it, and a ``details`` dictionary echoing the offending data.
"""

from typing import Any, Optional


class EngineError(ValueError):
    """Base class for all certified failures raised by the engine."""

    code = "ENGINE_ERROR"

    def __init__(
        self,
        message: str,
        code: Optional[str] = None,
        stage: Optional[str] = None,
        details: Optional[dict] = None,
    ):
        super().__init__(message)
        self.code = code or type(self).code
        self.stage = stage
        self.details: dict[str, Any] = dict(details or {})

    def to_dict(self) -> dict:
        """
        Serialize the error for a failure report.

        Returns:
            dict: code, stage, message and details
        """
        return {
            "code": self.code,
            "stage": self.stage,
            "message": str(self),
            "details": self.details,
        }


class ConfigError(EngineError):
    """Invalid job configuration or environment override."""

    code = "CONFIG_ERROR"


class GeometryError(EngineError):
    """Invalid similitude, point or tolerance."""

    code = "INVALID_GEOMETRY"


class SkeletonError(EngineError):
    """Skeleton rejected by validation."""

    code = "REJECT_SKELETON"


class GraphError(EngineError):
    """Induced graph construction or partition search failure."""

    code = "GRAPH_ERROR"


class SearchExhausted(GraphError):
    """No orientation vector and partition passed the certifier."""

    code = "EXHAUSTED"


class RuleError(EngineError):
    """Substitution rule violates its definition."""

    code = "RULE_ERROR"


class GifsError(EngineError):
    """Induced GIFS construction or certification failure."""

    code = "GIFS_ERROR"


class CurveError(EngineError):
    """Curve sampling or diagnostic failure."""

    code = "CURVE_ERROR"
