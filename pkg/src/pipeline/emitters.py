"""
Artifact writers: SVG polyline, ``t,x,y`` CSV and the certification report.
"""

from pathlib import Path
from typing import Optional, Sequence, Union

import numpy as np
import pandas as pd

from src.curve import CurveApproximation
from src.geometry import Point
from src.utils import Logger

from .report import CertificationReport

logger = Logger.get_logger(__name__)

PathLike = Union[str, Path]

MARGIN = 0.05
PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf")


def _prepare(path: PathLike) -> Path:
    out = Path(path)
    out.parent.mkdir(parents=True, exist_ok=True)
    return out


def curve_frame(approx: CurveApproximation) -> pd.DataFrame:
    """Vertices of the approximation as a ``t, x, y`` DataFrame."""
    return pd.DataFrame(
        {"t": approx.t, "x": approx.points.real, "y": approx.points.imag},
        columns=["t", "x", "y"],
    )


def write_csv(approx: CurveApproximation, path: PathLike) -> Path:
    """Write ``t,x,y`` rows with 17 significant digits."""
    out = _prepare(path)
    curve_frame(approx).to_csv(out, index=False, float_format="%.17g", lineterminator="\n")
    logger.info(f"Curve samples saved to {out}")
    return out


def _fmt(x: float) -> str:
    return f"{x:.9g}"


def _polyline(points: np.ndarray, color: str, stroke: float) -> str:
    coords = " ".join(f"{_fmt(p.real)},{_fmt(-p.imag)}" for p in points)
    return (
        f'  <polyline fill="none" stroke="{color}" stroke-width="{_fmt(stroke)}" '
        f'stroke-linejoin="round" points="{coords}"/>'
    )


def render_svg(
    approx: CurveApproximation,
    frame_points: Sequence[Point] = (),
    color_by_state: bool = False,
) -> str:
    """
    SVG document for the broken line.

    Args:
        approx: Curve approximation
        frame_points: Points the viewBox must contain (the level-1 vertices)
        color_by_state: One polyline per top-level loop edge, colored by state

    Returns:
        str: SVG text (y axis flipped so the plane reads upright)
    """
    pts = approx.points
    hull = np.concatenate([pts, np.asarray(list(frame_points), dtype=complex)])
    xmin, xmax = hull.real.min(), hull.real.max()
    ymin, ymax = (-hull.imag).min(), (-hull.imag).max()
    span = max(xmax - xmin, ymax - ymin, 1e-12)
    pad = MARGIN * span
    lengths = np.abs(np.diff(pts))
    positive = lengths[lengths > 0]
    stroke = 0.5 * float(positive.min()) if positive.size else span * 1e-3

    view = f"{_fmt(xmin - pad)} {_fmt(ymin - pad)} {_fmt(xmax - xmin + 2 * pad)} " + _fmt(
        ymax - ymin + 2 * pad
    )
    body = []
    if color_by_state and approx.branches.size:
        for branch in np.unique(approx.branches):
            idx = np.flatnonzero(approx.branches == branch)
            segment_points = pts[idx[0] : idx[-1] + 2]
            body.append(_polyline(segment_points, PALETTE[int(branch) % len(PALETTE)], stroke))
    else:
        body.append(_polyline(pts, "#000000", stroke))
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{view}">\n'
        + "\n".join(body)
        + "\n</svg>\n"
    )


def write_svg(
    approx: CurveApproximation,
    path: PathLike,
    frame_points: Sequence[Point] = (),
    color_by_state: bool = False,
) -> Path:
    out = _prepare(path)
    out.write_text(render_svg(approx, frame_points, color_by_state), encoding="utf-8")
    logger.info(f"SVG saved to {out}")
    return out


def write_report(report: CertificationReport, path: PathLike) -> Path:
    """JSON when the suffix is ``.json``, fixed-order text otherwise."""
    out = _prepare(path)
    text = report.to_json() if out.suffix.lower() == ".json" else report.to_text()
    out.write_text(text, encoding="utf-8")
    logger.info(f"Report saved to {out}")
    return out


def emit_artifacts(
    report: CertificationReport,
    approx: Optional[CurveApproximation],
    svg: Optional[PathLike] = None,
    csv: Optional[PathLike] = None,
    report_path: Optional[PathLike] = None,
    frame_points: Sequence[Point] = (),
    color_by_state: bool = False,
) -> list[Path]:
    """Write every requested artifact; curve artifacts are skipped when no curve exists."""
    written = []
    if approx is not None and svg:
        written.append(write_svg(approx, svg, frame_points, color_by_state))
    if approx is not None and csv:
        written.append(write_csv(approx, csv))
    if report_path:
        written.append(write_report(report, report_path))
    return written
