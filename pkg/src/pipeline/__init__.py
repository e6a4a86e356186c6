"""
Pipeline package initialization.
"""

from .catalog import export_example, get_example, list_examples
from .emitters import curve_frame, emit_artifacts, render_svg, write_csv, write_report, write_svg
from .job_config import Budgets, JobConfig, OutputPaths, load_job_config
from .report import CertificationReport
from .runner import PipelineResult, PipelineRunner, run_pipeline

__all__ = [
    "export_example",
    "get_example",
    "list_examples",
    "curve_frame",
    "emit_artifacts",
    "render_svg",
    "write_csv",
    "write_report",
    "write_svg",
    "Budgets",
    "JobConfig",
    "OutputPaths",
    "load_job_config",
    "CertificationReport",
    "PipelineResult",
    "PipelineRunner",
    "run_pipeline",
]
