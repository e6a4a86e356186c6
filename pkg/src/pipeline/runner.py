"""
End-to-end pipeline: skeleton validation, rule discovery or loading, certification, weights,
curve sampling, diagnostics and artifact emission.
"""

from contextlib import contextmanager
from dataclasses import dataclass
from typing import Iterator, Optional

from src.curve import (
    CurveApproximation,
    check_anchors,
    convergence_diagnostic,
    diagnostics_table,
    holder_diagnostic,
    sample_curve,
)
from src.geometry import Tolerance
from src.gifs import (
    InducedGifs,
    check_chain_condition,
    check_linearity,
    check_pure_cell_disjointness,
    induce_gifs,
    measure_weights,
    spectral_certify,
)
from src.graphs import (
    OrientationVector,
    induced_graph,
    is_partition_of,
    reverse_partition,
    search_orientation,
)
from src.ifs import IfsSystem, Skeleton, validate_skeleton
from src.substitution import (
    RuleAssessment,
    RuleCertifier,
    SubstitutionRule,
    assess_rule,
    is_traversing,
    parse_rule,
    validate_rule,
)
from src.utils import CurveError, EngineError, GifsError, Logger, RuleError

from .emitters import emit_artifacts
from .job_config import JobConfig
from .report import CertificationReport

logger = Logger.get_logger(__name__)

MASS_TOLERANCE = 1e-9
LINEARITY_DEPTH = 3


@dataclass
class PipelineResult:
    report: CertificationReport
    skeleton: Optional[Skeleton] = None
    rule: Optional[SubstitutionRule] = None
    gifs: Optional[InducedGifs] = None
    approximation: Optional[CurveApproximation] = None

    @property
    def exit_code(self) -> int:
        return self.report.exit_code


class PipelineRunner:
    """Runs one job, recording each stage in a CertificationReport."""

    def __init__(self, config: JobConfig, color_by_state: bool = False):
        self.config = config
        self.color_by_state = color_by_state
        self.report = CertificationReport(
            name=config.name, mode=config.mode, osc_asserted=config.osc
        )
        self.result = PipelineResult(self.report)
        self.ifs: Optional[IfsSystem] = None

    @contextmanager
    def _stage(self, name: str) -> Iterator[None]:
        try:
            yield
        except EngineError as e:
            if e.stage is None:
                e.stage = name
            raise
        Logger.log_stage(logger, name, "ok")

    def run(self) -> PipelineResult:
        """
        Execute every stage; the first EngineError ends the run with a FAIL report.

        Returns:
            PipelineResult: report plus intermediate objects and the curve
        """
        try:
            self._run_stages()
            self.report.verdict = "PASS"
        except EngineError as e:
            Logger.log_error(logger, e, f"Stage {e.stage} failed")
            self.report.fail(e.stage or "unknown", e)

        outputs = self.config.outputs
        frame = ()
        if self.ifs is not None and self.result.skeleton is not None:
            frame = self.ifs.level_one_vertices(self.result.skeleton.points)
        emit_artifacts(
            self.report,
            self.result.approximation,
            svg=outputs.svg,
            csv=outputs.csv,
            report_path=outputs.report,
            frame_points=frame,
            color_by_state=self.color_by_state,
        )
        return self.result

    def _run_stages(self) -> None:
        config = self.config
        budgets = config.budgets
        report = self.report

        with self._stage("load_config"):
            self.ifs = ifs = config.build_ifs()
            report.maps = ifs.size
            report.skeleton_points = len(config.skeleton)

        with self._stage("validate_skeleton"):
            tol = Tolerance(config.tolerance) if config.tolerance else None
            skeleton = validate_skeleton(ifs, config.skeleton, tol)
            self.result.skeleton = skeleton
            report.tolerance = skeleton.tolerance.epsilon
            report.skeleton_status = "valid"
            report.hata_spanning_tree = [list(edge) for edge in skeleton.spanning_tree]

        assessment: Optional[RuleAssessment] = None
        if config.mode == "auto-search":
            assessment = self._search(ifs, skeleton)
            rule = assessment.rule
        else:
            with self._stage("load_rule"):
                rule = parse_rule(config.rule, skeleton.m)
            report.beta = list(config.beta) if config.beta else None

        self.result.rule = rule
        report.rule = rule.lines()

        with self._stage("validate_rule"):
            validate_rule(rule, ifs, skeleton)

        with self._stage("primitivity"):
            if assessment is None:
                assessment = assess_rule(rule, budgets.resolve("pure_cell_depth"))
            report.coarse_rule = assessment.coarse.lines()
            report.incidence = assessment.incidence.tolist()
            if not assessment.primitivity.primitive:
                raise RuleError(
                    "Coarse substitution is not primitive",
                    code="NOT_PRIMITIVE",
                    details={"incidence": assessment.incidence.tolist()},
                )
            report.primitivity_exponent = assessment.primitivity.exponent

        with self._stage("pure_cell"):
            if assessment.witness is None:
                raise RuleError(
                    "No pure cell within the search depth",
                    code="NONE_FOUND",
                    details={"max_depth": budgets.resolve("pure_cell_depth")},
                )
            report.pure_cell = assessment.witness.label()

        if config.mode == "traversing-check":
            with self._stage("traversing"):
                report.traversing = is_traversing(rule, ifs)
                report.sets_equal_attractor = report.traversing

        with self._stage("induce_gifs"):
            gifs = induce_gifs(rule, ifs, skeleton)
            report.bridges = len(gifs.all_bridges())

        with self._stage("chain_condition"):
            chain = check_chain_condition(gifs)
            report.chain_condition = {
                "holds": chain.holds,
                "junctions": chain.junctions,
                "anchors": chain.anchors,
                "glued_bridges": f"{chain.glued_bridges}/{chain.bridges}",
            }
            if not chain.holds:
                raise GifsError(
                    "Chain condition fails",
                    code="CHAIN_CONDITION_FAILED",
                    details={"violations": [vars(v) for v in chain.violations]},
                )
            linearity = check_linearity(gifs, LINEARITY_DEPTH)
            report.linearity = {
                "holds": linearity.holds,
                "pairs_checked": linearity.pairs_checked,
                "max_depth": linearity.max_depth,
            }
            if not linearity.holds:
                raise GifsError(
                    "Adjacent paths do not meet",
                    code="NOT_LINEAR",
                    details={"violations": [list(v) for v in linearity.violations]},
                )

        with self._stage("pure_cell_disjointness"):
            check_pure_cell_disjointness(gifs, assessment.witness)
            report.pure_cell_confirmed = True

        with self._stage("spectral_certify"):
            certificate = spectral_certify(gifs, assessment.primitivity.primitive)
            report.dimension = certificate.dimension
            report.spectral_radius = certificate.spectral_radius
            report.radius_bounds = list(certificate.radius_bounds)
            report.column_sum_min = certificate.column_sum_min
            report.column_sum_max = certificate.column_sum_max
            report.simplified_radius = certificate.simplified_radius
            report.spectral_conditional = certificate.conditional

        with self._stage("measure_weights"):
            weights = measure_weights(gifs)
            gifs = gifs.with_weights(weights.as_dict())
            self.result.gifs = gifs
            report.weights = {state.label(): value for state, value in weights.as_dict().items()}
            report.weight_normalization = weights.normalization
            report.weight_residual = weights.residual

        with self._stage("sample_curve"):
            segment_cap = budgets.resolve("segment_cap")
            approx = sample_curve(gifs, config.depth, segment_cap)
            self.result.approximation = approx
            report.depth = approx.depth
            report.segments = approx.segment_count
            report.total_mass = approx.total_mass
            if abs(approx.total_mass - 1.0) > MASS_TOLERANCE:
                raise CurveError(
                    "Total parameter mass differs from 1",
                    code="MASS_MISMATCH",
                    details={"total_mass": approx.total_mass},
                )
            misses = check_anchors(approx, skeleton)
            if misses:
                raise CurveError(
                    "Curve misses skeleton anchors",
                    code="ANCHOR_MISMATCH",
                    details={"anchors": misses},
                )

        with self._stage("diagnostics"):
            report.diagnostics = self._diagnostics(gifs, approx, segment_cap)
            if config.diagnostic_depths is not None:
                first, last = config.diagnostic_depths
                table = diagnostics_table(
                    gifs,
                    range(first, last + 1),
                    budgets.resolve("holder_pairs"),
                    config.effective_seed,
                    segment_cap,
                )
                report.diagnostics_table = table.to_dict(orient="records")

    def _search(self, ifs: IfsSystem, skeleton: Skeleton) -> RuleAssessment:
        config = self.config
        budgets = config.budgets
        report = self.report
        with self._stage("search_orientation"):
            betas = [OrientationVector(config.beta)] if config.beta else None
            result = search_orientation(
                ifs,
                skeleton,
                RuleCertifier(skeleton, budgets.resolve("pure_cell_depth")),
                betas=betas,
                node_budget=budgets.resolve("node_budget"),
                max_partitions=budgets.resolve("max_partitions"),
            )
            report.beta = list(result.beta.signs)
            report.search_attempts = list(result.attempts)
            report.partition = result.partition.lines()
            reversed_paths = reverse_partition(result.partition).paths
            report.reversal_duality = is_partition_of(
                reversed_paths, induced_graph(ifs, skeleton, result.beta.negated())
            )
        return result.verdict.payload

    def _diagnostics(self, gifs: InducedGifs, approx: CurveApproximation, cap: int) -> dict:
        pairs = self.config.budgets.resolve("holder_pairs")
        seed = self.config.effective_seed
        diagnostics = {
            "holder_statistic": holder_diagnostic(approx, pairs, seed),
            "holder_exponent": 1.0 / approx.dimension,
            "seed": seed,
        }
        if approx.depth >= 2:
            lower = [sample_curve(gifs, approx.depth - k, cap) for k in (2, 1)]
            first = convergence_diagnostic(lower[0], lower[1])
            second = convergence_diagnostic(lower[1], approx)
            diagnostics["convergence_gaps"] = [first, second]
            diagnostics["convergence_ratio"] = second / first if first > 0 else None
        return diagnostics


def run_pipeline(config: JobConfig, color_by_state: bool = False) -> PipelineResult:
    """
    Run one job end to end.

    Args:
        config: Parsed job configuration
        color_by_state: Color the SVG by top-level loop edge

    Returns:
        PipelineResult: report (PASS or FAIL with the failing stage), artifacts written
    """
    return PipelineRunner(config, color_by_state).run()
