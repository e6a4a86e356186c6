"""
Strict JSON job configuration.

Complex numbers are ``[re, im]`` pairs. Unknown keys anywhere in the document are rejected.
"""

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional, Union

from src.config import Config
from src.geometry import Similitude
from src.ifs import IfsSystem
from src.utils import ConfigError, EngineError
from src.utils.helpers import NumericHelpers

MODES = ("auto-search", "explicit-rule", "traversing-check")

_TOP_LEVEL_KEYS = [
    "name",
    "maps",
    "skeleton",
    "mode",
    "beta",
    "rule",
    "depth",
    "diagnostic_depths",
    "tolerance",
    "budgets",
    "outputs",
    "seed",
    "osc",
]
_MAP_KEYS = ["scale", "offset", "reflects"]
_BUDGET_KEYS = ["node_budget", "max_partitions", "pure_cell_depth", "segment_cap", "holder_pairs"]
_OUTPUT_KEYS = ["svg", "csv", "report"]


def _positive_int(value: Any, field_name: str, allow_zero: bool = False) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < (0 if allow_zero else 1):
        raise ConfigError(
            f"{field_name} must be a {'nonnegative' if allow_zero else 'positive'} integer",
            details={"field": field_name, "value": value},
        )
    return value


def _optional_str(value: Any, field_name: str) -> Optional[str]:
    if value is not None and not isinstance(value, str):
        raise ConfigError(f"{field_name} must be a string", details={"field": field_name})
    return value


@dataclass(frozen=True)
class Budgets:
    """Per-run overrides of the Config budgets; None means use the Config default."""

    node_budget: Optional[int] = None
    max_partitions: Optional[int] = None
    pure_cell_depth: Optional[int] = None
    segment_cap: Optional[int] = None
    holder_pairs: Optional[int] = None

    @classmethod
    def from_dict(cls, data: Optional[dict]) -> "Budgets":
        if data is None:
            return cls()
        if not isinstance(data, dict):
            raise ConfigError("budgets must be an object")
        NumericHelpers.validate_known_fields(data, _BUDGET_KEYS, "budgets")
        values = {
            key: None if data.get(key) is None else _positive_int(data[key], f"budgets.{key}")
            for key in _BUDGET_KEYS
        }
        return cls(**values)

    def to_dict(self) -> dict:
        return {key: getattr(self, key) for key in _BUDGET_KEYS}

    def resolve(self, key: str) -> int:
        value = getattr(self, key)
        return value if value is not None else getattr(Config, key.upper())


@dataclass(frozen=True)
class OutputPaths:
    svg: Optional[str] = None
    csv: Optional[str] = None
    report: Optional[str] = None

    @classmethod
    def from_dict(cls, data: Optional[dict]) -> "OutputPaths":
        if data is None:
            return cls()
        if not isinstance(data, dict):
            raise ConfigError("outputs must be an object")
        NumericHelpers.validate_known_fields(data, _OUTPUT_KEYS, "outputs")
        return cls(**{key: _optional_str(data.get(key), f"outputs.{key}") for key in _OUTPUT_KEYS})

    def to_dict(self) -> dict:
        return {key: getattr(self, key) for key in _OUTPUT_KEYS}


@dataclass(frozen=True)
class JobConfig:
    name: str
    maps: tuple[Similitude, ...]
    skeleton: tuple[complex, ...]
    mode: str = "auto-search"
    beta: Optional[tuple[int, ...]] = None
    rule: Optional[tuple[str, ...]] = None
    depth: int = 4
    diagnostic_depths: Optional[tuple[int, int]] = None
    tolerance: Optional[float] = None
    budgets: Budgets = field(default_factory=Budgets)
    outputs: OutputPaths = field(default_factory=OutputPaths)
    seed: Optional[int] = None
    osc: bool = True

    def build_ifs(self) -> IfsSystem:
        return IfsSystem(self.maps, self.name)

    @property
    def effective_seed(self) -> int:
        return Config.SEED if self.seed is None else self.seed

    @classmethod
    def from_dict(cls, data: dict) -> "JobConfig":
        """
        Parse and validate a configuration document.

        Raises:
            ConfigError: on any schema violation
        """
        if not isinstance(data, dict):
            raise ConfigError("Job configuration must be a JSON object")
        NumericHelpers.validate_known_fields(data, _TOP_LEVEL_KEYS, "job config")
        is_valid, missing = NumericHelpers.validate_required_fields(
            data, ["name", "maps", "skeleton"]
        )
        if not is_valid:
            raise ConfigError(
                f"Missing required keys: {', '.join(missing)}", details={"missing": missing}
            )

        name = data["name"]
        if not isinstance(name, str) or not name:
            raise ConfigError("name must be a nonempty string")

        if not isinstance(data["maps"], list):
            raise ConfigError("maps must be a list")
        maps = tuple(cls._parse_map(entry, i) for i, entry in enumerate(data["maps"], start=1))

        if not isinstance(data["skeleton"], list):
            raise ConfigError("skeleton must be a list of [re, im] points")
        skeleton = tuple(
            NumericHelpers.to_complex(p, f"skeleton[{i}]") for i, p in enumerate(data["skeleton"])
        )

        mode = data.get("mode", "auto-search")
        if mode not in MODES:
            raise ConfigError(f"mode must be one of {', '.join(MODES)}", details={"mode": mode})

        beta = data.get("beta")
        if beta is not None:
            if not isinstance(beta, list) or any(
                isinstance(b, bool) or b not in (1, -1) for b in beta
            ):
                raise ConfigError("beta must be a list of +1/-1", details={"beta": beta})
            if len(beta) != len(maps):
                raise ConfigError(
                    "beta length must equal the number of maps",
                    details={"beta": len(beta), "maps": len(maps)},
                )
            beta = tuple(beta)

        rule = data.get("rule")
        if rule is not None:
            if not isinstance(rule, list) or not all(isinstance(line, str) for line in rule):
                raise ConfigError("rule must be a list of strings")
            rule = tuple(rule)
        if mode != "auto-search" and rule is None:
            raise ConfigError(f"mode {mode} requires a rule", details={"mode": mode})

        depth = _positive_int(data.get("depth", 4), "depth", allow_zero=True)

        diagnostic_depths = data.get("diagnostic_depths")
        if diagnostic_depths is not None:
            if not isinstance(diagnostic_depths, list) or len(diagnostic_depths) != 2:
                raise ConfigError("diagnostic_depths must be a [first, last] pair")
            first, last = (
                _positive_int(d, "diagnostic_depths", allow_zero=True) for d in diagnostic_depths
            )
            if first > last:
                raise ConfigError(
                    "diagnostic_depths must be increasing",
                    details={"first": first, "last": last},
                )
            diagnostic_depths = (first, last)

        tolerance = data.get("tolerance")
        if tolerance is not None and (
            isinstance(tolerance, bool) or not isinstance(tolerance, (int, float)) or tolerance <= 0
        ):
            raise ConfigError("tolerance must be a positive number")

        seed = data.get("seed")
        if seed is not None:
            seed = _positive_int(seed, "seed", allow_zero=True)

        osc = data.get("osc", True)
        if not isinstance(osc, bool):
            raise ConfigError("osc must be a boolean")

        config = cls(
            name=name,
            maps=maps,
            skeleton=skeleton,
            mode=mode,
            beta=beta,
            rule=rule,
            depth=depth,
            diagnostic_depths=diagnostic_depths,
            tolerance=None if tolerance is None else float(tolerance),
            budgets=Budgets.from_dict(data.get("budgets")),
            outputs=OutputPaths.from_dict(data.get("outputs")),
            seed=seed,
            osc=osc,
        )
        try:
            config.build_ifs()
        except EngineError as e:
            raise ConfigError(str(e), details=e.details) from e
        return config

    @staticmethod
    def _parse_map(entry: Any, position: int) -> Similitude:
        context = f"maps[{position - 1}]"
        if not isinstance(entry, dict):
            raise ConfigError(f"{context} must be an object")
        NumericHelpers.validate_known_fields(entry, _MAP_KEYS, context)
        if "scale" not in entry:
            raise ConfigError(f"{context} needs a scale", details={"map": position})
        reflects = entry.get("reflects", False)
        if not isinstance(reflects, bool):
            raise ConfigError(f"{context}.reflects must be a boolean")
        try:
            return Similitude(
                NumericHelpers.to_complex(entry["scale"], f"{context}.scale"),
                NumericHelpers.to_complex(entry.get("offset", [0.0, 0.0]), f"{context}.offset"),
                reflects,
            )
        except ConfigError:
            raise
        except EngineError as e:
            raise ConfigError(str(e), details=e.details) from e

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "maps": [
                {
                    "scale": NumericHelpers.from_complex(s.scale),
                    "offset": NumericHelpers.from_complex(s.offset),
                    "reflects": s.reflects,
                }
                for s in self.maps
            ],
            "skeleton": [NumericHelpers.from_complex(p) for p in self.skeleton],
            "mode": self.mode,
            "beta": None if self.beta is None else list(self.beta),
            "rule": None if self.rule is None else list(self.rule),
            "depth": self.depth,
            "diagnostic_depths": (
                None if self.diagnostic_depths is None else list(self.diagnostic_depths)
            ),
            "tolerance": self.tolerance,
            "budgets": self.budgets.to_dict(),
            "outputs": self.outputs.to_dict(),
            "seed": self.seed,
            "osc": self.osc,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "JobConfig":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise ConfigError(f"Invalid JSON: {e}", details={"line": e.lineno}) from e
        return cls.from_dict(data)


def load_job_config(path: Union[str, Path]) -> JobConfig:
    """
    Read a job configuration file.

    Raises:
        ConfigError: unreadable file or schema violation
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"Cannot read {path}: {e}", details={"path": str(path)}) from e
    return JobConfig.from_json(text)
