"""
Command-line entry point for the space-filling curve construction engine.

    python -m src.main run config.json [--depth n] [--svg path] [--csv path] [--report path]
                                       [--beta 1,-1,-1] [--seed k] [--color-by-state]
    python -m src.main examples list
    python -m src.main examples export <name> [--output path]
"""

import argparse
import sys
from dataclasses import replace
from typing import Any, Optional

from tabulate import tabulate

from src.config import Config
from src.pipeline import (
    OutputPaths,
    export_example,
    list_examples,
    load_job_config,
    run_pipeline,
)
from src.pipeline.report import EXIT_CONFIG_ERROR
from src.utils import ConfigError, Logger

logger = Logger.get_logger(__name__)


def print_separator(title: str = ""):
    """Print a visual separator."""
    if title:
        print(f"\n{'=' * 80}")
        print(f"  {title}")
        print(f"{'=' * 80}\n")
    else:
        print(f"{'=' * 80}\n")


def display_results(title: str, rows: Any, headers: Optional[list] = None):
    """
    Display rows in a grid table.

    Args:
        title: Title of the table
        rows: List of dictionaries or list of lists
        headers: Optional list of headers
    """
    print(f"\n{title}")
    print("-" * len(title))
    if not rows:
        print("No data available.")
        return
    if isinstance(rows[0], dict):
        headers = headers or list(rows[0].keys())
        rows = [[row.get(h, "") for h in headers] for row in rows]
    print(tabulate(rows, headers=headers or [], tablefmt="grid"))
    print()


def parse_beta(text: str) -> tuple[int, ...]:
    """
    Parse ``1,-1,-1`` into an orientation tuple.

    Raises:
        ConfigError: on malformed input
    """
    try:
        signs = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise ConfigError(f"Malformed --beta '{text}'", details={"beta": text}) from None
    if any(s not in (1, -1) for s in signs):
        raise ConfigError("--beta entries must be 1 or -1", details={"beta": text})
    return signs


def run_command(args: argparse.Namespace) -> int:
    """Run one job; returns the exit code."""
    try:
        config = load_job_config(args.config)
        overrides = {}
        if args.depth is not None:
            if args.depth < 0:
                raise ConfigError("--depth must be >= 0", details={"depth": args.depth})
            overrides["depth"] = args.depth
        if args.beta is not None:
            beta = parse_beta(args.beta)
            if len(beta) != len(config.maps):
                raise ConfigError(
                    "--beta length must equal the number of maps",
                    details={"beta": len(beta), "maps": len(config.maps)},
                )
            overrides["beta"] = beta
        if args.seed is not None:
            if args.seed < 0:
                raise ConfigError("--seed must be >= 0", details={"seed": args.seed})
            overrides["seed"] = args.seed
        if args.diagnostic_depths is not None:
            first, last = args.diagnostic_depths
            if not 0 <= first <= last:
                raise ConfigError(
                    "--diagnostic-depths needs 0 <= FIRST <= LAST",
                    details={"first": first, "last": last},
                )
            overrides["diagnostic_depths"] = (first, last)
        outputs = config.outputs
        overrides["outputs"] = OutputPaths(
            svg=args.svg or outputs.svg,
            csv=args.csv or outputs.csv,
            report=args.report or outputs.report,
        )
        config = replace(config, **overrides)
    except ConfigError as e:
        Logger.log_error(logger, e, "Configuration rejected")
        print(f"Configuration error: {e}", file=sys.stderr)
        return EXIT_CONFIG_ERROR

    print_separator(f"JOB {config.name} ({config.mode}, depth {config.depth})")
    result = run_pipeline(config, color_by_state=args.color_by_state)
    report = result.report

    summary = [
        ["verdict", report.verdict],
        ["failing stage", report.failing_stage or "-"],
        ["beta", report.beta],
        ["primitivity exponent", report.primitivity_exponent],
        ["pure cell", report.pure_cell],
        ["dimension", report.dimension],
        ["spectral radius", report.spectral_radius],
        ["segments", report.segments],
    ]
    display_results("Certification summary", summary, headers=["field", "value"])
    if report.diagnostics_table:
        display_results("Diagnostics by depth", report.to_dict()["diagnostics_table"])
    if report.rule:
        display_results("Substitution rule", [[line] for line in report.rule], headers=["rule"])
    if report.failure:
        print(f"Failure: {report.failure['code']} - {report.failure['message']}")
    return result.exit_code


def examples_command(args: argparse.Namespace) -> int:
    """List or export built-in configurations."""
    if args.action == "list":
        rows = [
            {
                "name": name,
                "maps": len(config.maps),
                "skeleton": len(config.skeleton),
                "mode": config.mode,
                "depth": config.depth,
            }
            for name, config in list_examples().items()
        ]
        display_results("Built-in examples", rows)
        return 0

    if not args.name:
        print("examples export needs a name", file=sys.stderr)
        return EXIT_CONFIG_ERROR
    try:
        text = export_example(args.name, args.output)
    except ConfigError as e:
        print(f"Configuration error: {e}", file=sys.stderr)
        return EXIT_CONFIG_ERROR
    if not args.output:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="Construct and certify space-filling curves of planar self-similar sets"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="Run a job configuration")
    run.add_argument("config", help="Path to the JSON job configuration")
    run.add_argument("--depth", type=int, help="Approximation depth")
    run.add_argument("--svg", help="SVG output path")
    run.add_argument("--csv", help="CSV output path")
    run.add_argument("--report", help="Report output path (.json for JSON)")
    run.add_argument("--beta", help="Orientation vector, e.g. 1,-1,-1")
    run.add_argument("--seed", type=int, help="Seed for the Hölder diagnostic")
    run.add_argument(
        "--diagnostic-depths",
        type=int,
        nargs=2,
        metavar=("FIRST", "LAST"),
        help="Tabulate Hölder and convergence diagnostics over this depth range",
    )
    run.add_argument(
        "--color-by-state", action="store_true", help="Color the SVG by top-level loop edge"
    )
    run.set_defaults(handler=run_command)

    examples = sub.add_parser("examples", help="Built-in example catalog")
    examples.add_argument("action", choices=["list", "export"])
    examples.add_argument("name", nargs="?", help="Example name for export")
    examples.add_argument("--output", help="Write the exported JSON here")
    examples.set_defaults(handler=examples_command)
    return parser


def main(argv: Optional[list] = None) -> int:
    """Parse arguments and dispatch."""
    if not Config.validate_config():
        print("Invalid CURVE_* environment configuration", file=sys.stderr)
        return EXIT_CONFIG_ERROR
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except Exception as e:
        Logger.log_error(logger, e, "Fatal error")
        return 1


if __name__ == "__main__":
    sys.exit(main())
