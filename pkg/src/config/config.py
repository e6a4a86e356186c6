"""
Configuration module for environment-driven engine budgets and output locations.
"""

import os
from pathlib import Path

from dotenv import load_dotenv

# Load environment variables from .env file
env_path = Path(__file__).parent.parent.parent / ".env"
load_dotenv(dotenv_path=env_path)


class Config:
    """
    Configuration class to manage engine defaults.

    Every value can be overridden through a ``CURVE_*`` environment variable; a job config's
    ``budgets`` block overrides these per run.
    """

    # Point identification: epsilon = factor * diameter of the skeleton
    TOLERANCE_FACTOR = float(os.getenv("CURVE_TOLERANCE_FACTOR", "1e-9"))

    # Search budgets
    NODE_BUDGET = int(os.getenv("CURVE_NODE_BUDGET", "10000000"))
    MAX_PARTITIONS = int(os.getenv("CURVE_MAX_PARTITIONS", "64"))
    PURE_CELL_DEPTH = int(os.getenv("CURVE_PURE_CELL_DEPTH", "4"))

    # Curve sampling and diagnostics
    SEGMENT_CAP = int(os.getenv("CURVE_SEGMENT_CAP", "10000000"))
    HOLDER_PAIRS = int(os.getenv("CURVE_HOLDER_PAIRS", "100000"))
    SEED = int(os.getenv("CURVE_SEED", str(0x5FC)), 0)
    POWER_ITERATIONS = int(os.getenv("CURVE_POWER_ITERATIONS", "100000"))

    # Logging
    LOG_FILE = os.getenv("CURVE_LOG_FILE", "")
    CONSOLE_LOG_LEVEL = os.getenv("CURVE_LOG_LEVEL", "INFO").upper()

    @classmethod
    def validate_config(cls):
        """
        Validate that every budget is in range.

        Returns:
            bool: True if configuration is valid, False otherwise
        """
        positive_fields = [
            "TOLERANCE_FACTOR",
            "NODE_BUDGET",
            "MAX_PARTITIONS",
            "SEGMENT_CAP",
            "HOLDER_PAIRS",
            "POWER_ITERATIONS",
        ]
        for field in positive_fields:
            if not getattr(cls, field) > 0:
                return False
        return cls.PURE_CELL_DEPTH >= 1 and cls.SEED >= 0

    @classmethod
    def as_dict(cls) -> dict:
        """
        Snapshot of the effective budgets.

        Returns:
            dict: budget name to value
        """
        return {
            "tolerance_factor": cls.TOLERANCE_FACTOR,
            "node_budget": cls.NODE_BUDGET,
            "max_partitions": cls.MAX_PARTITIONS,
            "pure_cell_depth": cls.PURE_CELL_DEPTH,
            "segment_cap": cls.SEGMENT_CAP,
            "holder_pairs": cls.HOLDER_PAIRS,
            "seed": cls.SEED,
            "power_iterations": cls.POWER_ITERATIONS,
        }
