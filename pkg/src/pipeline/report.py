"""
Certification report: one record per run, rendered as fixed-order text or JSON.
"""

import json
from dataclasses import asdict, dataclass, field
from typing import Any, Optional

from tabulate import tabulate

from src.utils import EngineError
from src.utils.helpers import NumericHelpers

EXIT_PASS = 0
EXIT_CERTIFIED_FAIL = 2
EXIT_EXHAUSTED = 3
EXIT_CONFIG_ERROR = 4

# Stages that only read user input; their failures are configuration errors.
INPUT_STAGES = ("load_config", "load_rule")


@dataclass
class CertificationReport:
    """
    Outcome of every pipeline stage. ``verdict`` is PASS only when the rule is consistent,
    primitive and has a pure cell, and the chain condition and spectral certificate hold.
    """

    name: str
    mode: str
    verdict: str = "FAIL"
    failing_stage: Optional[str] = None
    failure: Optional[dict] = None
    osc_asserted: bool = True
    maps: Optional[int] = None
    skeleton_points: Optional[int] = None
    tolerance: Optional[float] = None
    skeleton_status: Optional[str] = None
    hata_spanning_tree: Optional[list] = None
    beta: Optional[list] = None
    search_attempts: list = field(default_factory=list)
    partition: Optional[list] = None
    reversal_duality: Optional[bool] = None
    rule: Optional[list] = None
    coarse_rule: Optional[list] = None
    incidence: Optional[list] = None
    primitivity_exponent: Optional[int] = None
    pure_cell: Optional[str] = None
    pure_cell_confirmed: Optional[bool] = None
    traversing: Optional[bool] = None
    sets_equal_attractor: Optional[bool] = None
    bridges: Optional[int] = None
    chain_condition: Optional[dict] = None
    linearity: Optional[dict] = None
    dimension: Optional[float] = None
    spectral_radius: Optional[float] = None
    radius_bounds: Optional[list] = None
    column_sum_min: Optional[float] = None
    column_sum_max: Optional[float] = None
    simplified_radius: Optional[float] = None
    spectral_conditional: Optional[bool] = None
    weights: Optional[dict] = None
    weight_normalization: Optional[str] = None
    weight_residual: Optional[float] = None
    depth: Optional[int] = None
    segments: Optional[int] = None
    total_mass: Optional[float] = None
    diagnostics: Optional[dict] = None
    diagnostics_table: Optional[list] = None

    def fail(self, stage: str, error: EngineError) -> None:
        self.verdict = "FAIL"
        self.failing_stage = stage
        self.failure = error.to_dict()

    @property
    def exit_code(self) -> int:
        if self.verdict == "PASS":
            return EXIT_PASS
        if self.failure and self.failure.get("code") == "EXHAUSTED":
            return EXIT_EXHAUSTED
        if self.failing_stage in INPUT_STAGES:
            return EXIT_CONFIG_ERROR
        return EXIT_CERTIFIED_FAIL

    def to_dict(self) -> dict:
        return _normalize(asdict(self))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False) + "\n"

    def to_text(self) -> str:
        lines = []
        for key, value in self.to_dict().items():
            if value is None:
                continue
            if isinstance(value, list) and value and all(isinstance(v, dict) for v in value):
                lines.append(f"{key}:")
                lines.append(tabulate(value, headers="keys", tablefmt="simple", missingval="-"))
            elif isinstance(value, list) and value and all(isinstance(v, str) for v in value):
                lines.append(f"{key}:")
                lines.extend(f"  {item}" for item in value)
            elif isinstance(value, (dict, list)):
                lines.append(f"{key}: {json.dumps(value, sort_keys=False)}")
            elif isinstance(value, float):
                lines.append(f"{key}: {NumericHelpers.format_float(value)}")
            else:
                lines.append(f"{key}: {value}")
        return "\n".join(lines) + "\n"


def _normalize(value: Any) -> Any:
    """Convert numpy scalars, tuples and non-finite floats to plain JSON values."""
    if isinstance(value, dict):
        return {str(k): _normalize(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_normalize(v) for v in value]
    if hasattr(value, "item") and not isinstance(value, (str, bytes)):
        value = value.item()
    if isinstance(value, float) and value != value:
        return None
    return value
