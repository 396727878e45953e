"""Automatic repair pipeline.

Two routines run after the initial graph-cut labeling: the validity routine
inserts/removes charts until every chart, boundary and corner passes its
rule, then the monotonicity routine removes turning points while keeping the
labeling valid. Validity is always worth more than quality: the second
routine rolls back any step that breaks validity or fails to reduce the
turning-point count, the first one never rolls back.

The validity routine carries a visited-state set of tuples
(#charts, #boundaries, #corners, #invalid of each, #turning-points); seeing
the same tuple twice means the loop is cycling, which triggers the more
aggressive escape (removing the charts around invalid boundaries).
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import operators as ops
from .graph import LabelingGraph
from .labeling import compute_labeling, fidelity_score
from .mesh import SurfaceMesh
from .validity import ValidityReport, feature_edge_stats, validate


@dataclass
class PipelineConfig:
    compactness: float = 1.0
    fidelity: float = 3.0
    smoothness_mode: str = "uniform-potts"
    sensitivity: float = 1e-10
    tilt_angle: float = 0.05
    allow_opposite_labels: bool = False
    min_reflex_fraction: float = 1.0
    corner_rule: str = "improved"
    turning_point_penalty: float = 1.0
    max_iterations: int = 10
    insert_width: int = 3
    insert_radius: int = 3


@dataclass
class PipelineResult:
    labels: np.ndarray
    graph: LabelingGraph
    report: ValidityReport
    status: str  # valid-all-monotone | valid-with-turning-points | invalid | failed
    iterations: int = 0
    durations: dict = field(default_factory=dict)
    error: Optional[str] = None
    op_log: list = field(default_factory=list)


def state_tuple(graph: LabelingGraph, report: ValidityReport) -> tuple:
    return (
        graph.n_charts,
        graph.n_boundaries,
        graph.n_corners,
        len(report.invalid_charts),
        len(report.invalid_boundaries),
        len(report.invalid_corners),
        graph.total_turning_points,
    )


def labeling_status(graph: LabelingGraph, report: ValidityReport) -> str:
    if not report.is_valid:
        return "invalid"
    if graph.total_turning_points == 0:
        return "valid-all-monotone"
    return "valid-with-turning-points"


class _State:
    """(labels, graph, report) kept in sync through operator applications."""

    def __init__(self, mesh, labels, cfg: PipelineConfig, log=None):
        self.mesh = mesh
        self.cfg = cfg
        self.log = log if log is not None else []
        self.set(np.asarray(labels, dtype=np.int64))

    def set(self, labels):
        self.labels = labels
        self.graph = LabelingGraph(self.mesh, labels, self.cfg.turning_point_penalty)
        self.report = validate(
            self.graph,
            self.cfg.allow_opposite_labels,
            self.cfg.min_reflex_fraction,
            self.cfg.corner_rule,
        )

    def note(self, op, target, changed, extra=""):
        suffix = f" {extra}" if extra else ""
        self.log.append(f"{op} target={target} changed={changed}{suffix}")

    @property
    def valid(self):
        return self.report.is_valid


def _increase_valence_phase(st: _State) -> None:
    cfg = st.cfg
    for _ in range(100):
        if st.valid:
            return
        applied = False
        for cid in st.report.invalid_charts:
            if not ops.is_feature_surrounded(st.graph, cid):
                continue
            old_chart = st.graph.charts[cid]
            anchor, old_valence = int(old_chart.triangles[0]), old_chart.valence
            out = ops.increase_chart_valence(st.mesh, st.labels, st.graph, cid)
            if not out.applied:
                continue
            g2 = LabelingGraph(st.mesh, out.labels, cfg.turning_point_penalty)
            if g2.charts[int(g2.chart_of[anchor])].valence <= old_valence:
                continue  # no valence gain: treat as failed, keep the old labeling
            st.set(out.labels)
            st.note("increase_chart_valence", cid, len(out.changed))
            applied = True
            break
        if not applied:
            return


def _fix_boundaries_phase(st: _State) -> None:
    for _ in range(100):
        if st.valid:
            return
        applied = False
        for bid in st.report.invalid_boundaries:
            out = ops.fix_invalid_boundary(
                st.mesh, st.labels, st.graph, bid, st.cfg.insert_width
            )
            if out.applied:
                st.set(out.labels)
                st.note("fix_invalid_boundary", bid, len(out.changed))
                applied = True
                break
        if not applied:
            return


def _fix_corners_phase(st: _State) -> None:
    for _ in range(100):
        if st.valid:
            return
        applied = False
        for cid in st.report.invalid_corners:
            out = None
            for radius in range(st.cfg.insert_radius, 0, -1):
                try:
                    out = ops.fix_invalid_corner(
                        st.mesh, st.labels, st.graph, cid, radius, st.cfg.corner_rule
                    )
                    break
                except ValueError:  # radius exceeds adjacent charts: shrink
                    continue
            if out is not None and out.applied:
                st.set(out.labels)
                st.note("fix_invalid_corner", cid, len(out.changed))
                applied = True
                break
        if not applied:
            return


def _remove_invalid_charts(st: _State) -> bool:
    """One sweep of chart removal over non-feature-surrounded invalid charts."""
    any_applied = False
    for _ in range(100):
        target = next(
            (
                cid
                for cid in st.report.invalid_charts
                if not ops.is_feature_surrounded(st.graph, cid)
            ),
            None,
        )
        if target is None:
            return any_applied
        out = ops.remove_chart(st.mesh, st.labels, st.graph, target)
        if not out.applied:
            return any_applied
        st.set(out.labels)
        st.note("remove_chart", target, len(out.changed))
        any_applied = True
        if st.valid:
            return True
    return any_applied


def _remove_charts_around_invalid_boundaries(st: _State) -> bool:
    """Escape hatch when the state tuple repeats: dissolve both charts
    adjacent to each invalid boundary."""
    any_applied = False
    for _ in range(2 * max(1, st.graph.n_boundaries)):
        if not st.report.invalid_boundaries or st.valid:
            return any_applied
        b = st.graph.boundaries[st.report.invalid_boundaries[0]]
        progressed = False
        for cid in sorted({b.left_chart, b.right_chart}):
            out = ops.remove_chart(st.mesh, st.labels, st.graph, cid)
            if out.applied:
                st.set(out.labels)
                st.note("remove_chart", cid, len(out.changed), "escape")
                progressed = True
                break  # chart ids are stale after the rebuild
        if not progressed:
            return any_applied
        any_applied = True
    return any_applied


def run_validity_routine(mesh: SurfaceMesh, labels, cfg: PipelineConfig = None, log=None):
    """Insert and remove charts until the labeling is valid (or give up).

    Returns (labels, graph, report, iterations). Never raises on failure to
    converge: an invalid report after max_iterations is the caller's signal.
    """
    cfg = cfg or PipelineConfig()
    st = _State(mesh, labels, cfg, log)
    visited = set()  # grows for the whole run
    n = 0
    while not st.valid and n < cfg.max_iterations:
        n += 1
        _increase_valence_phase(st)
        if st.valid:
            break
        _fix_boundaries_phase(st)
        if st.valid:
            break
        _fix_corners_phase(st)
        if st.valid:
            break
        while True:
            removed = _remove_invalid_charts(st)
            if st.valid:
                break
            s = state_tuple(st.graph, st.report)
            if s in visited:
                _remove_charts_around_invalid_boundaries(st)
                break  # escape applied: go round the outer loop again
            visited.add(s)
            if not removed:
                break
    return st.labels, st.graph, st.report, n


def _try_quality_op(st: _State, op, *args, require_tp_decrease=True):
    """Apply a monotonicity operator with rollback.

    Rejects the result unless the labeling stays valid and the total
    turning-point count strictly decreases (or at least does not increase,
    for straightening).
    """
    before_tp = st.graph.total_turning_points
    out = op(st.mesh, st.labels, st.graph, *args)
    if not out.applied:
        return False
    g2 = LabelingGraph(st.mesh, out.labels, st.cfg.turning_point_penalty)
    r2 = validate(
        g2, st.cfg.allow_opposite_labels, st.cfg.min_reflex_fraction, st.cfg.corner_rule
    )
    if not r2.is_valid:
        return False
    after_tp = g2.total_turning_points
    if require_tp_decrease and after_tp >= before_tp:
        return False
    if not require_tp_decrease and after_tp > before_tp:
        return False
    st.labels, st.graph, st.report = out.labels, g2, r2
    st.note(op.__name__, "/".join(str(a) for a in args), len(out.changed))
    return True


def _turning_point_vertices(graph: LabelingGraph) -> list:
    out = set()
    for b in graph.boundaries:
        out.update(b.turning_point_vertices())
    return sorted(out)


def _on_feature(mesh, v) -> bool:
    return any(
        tuple(sorted((v, nbr))) in mesh.feature_edges
        for nbr in mesh.vertex_neighbors_ordered(v)
    )


def run_monotonicity_routine(mesh: SurfaceMesh, labels, cfg: PipelineConfig = None, log=None):
    """Remove turning points from a valid labeling, keeping it valid.

    Step order: join feature-linked turning-point pairs, pull corners onto
    feature turning-points, push boundaries across smooth turning-points,
    then straighten the remaining smooth boundaries.
    """
    cfg = cfg or PipelineConfig()
    st = _State(mesh, labels, cfg, log)
    if st.graph.total_turning_points == 0:
        return st.labels, st.graph, st.report

    for _ in range(100):  # join pairs bridged by lost feature edges
        tps = _turning_point_vertices(st.graph)
        if not any(
            _try_quality_op(st, ops.join_turning_points_pair, t1, t2)
            for t1, t2 in itertools.combinations(tps, 2)
        ):
            break
    if st.graph.total_turning_points == 0:
        return st.labels, st.graph, st.report

    for _ in range(100):  # pull corners onto feature turning-points
        targets = [v for v in _turning_point_vertices(st.graph) if _on_feature(mesh, v)]
        if not any(_try_quality_op(st, ops.pull_closest_corner, v) for v in targets):
            break
    if st.graph.total_turning_points == 0:
        return st.labels, st.graph, st.report

    for _ in range(100):  # move boundaries across smooth turning-points
        targets = _turning_point_vertices(st.graph)
        if not any(
            _try_quality_op(st, ops.move_boundary_near_turning_point, v, cfg.insert_radius)
            for v in targets
        ):
            break
    if st.graph.total_turning_points == 0:
        return st.labels, st.graph, st.report

    bid = 0
    for _ in range(2 * max(1, st.graph.n_boundaries)):  # straighten what remains
        if bid >= st.graph.n_boundaries:
            break
        if _try_quality_op(st, ops.straighten_boundary, bid, require_tp_decrease=False):
            continue  # ids reshuffled, retry the same index on the new graph
        bid += 1
    return st.labels, st.graph, st.report


def label_mesh(
    mesh: SurfaceMesh,
    cfg: PipelineConfig = None,
    init_labels=None,
) -> PipelineResult:
    """Initial labeling plus both repair routines, with per-stage timings."""
    cfg = cfg or PipelineConfig()
    durations = {}
    op_log = []
    t0 = time.perf_counter()
    try:
        if init_labels is None:
            labels = compute_labeling(
                mesh,
                compactness=cfg.compactness,
                fidelity=cfg.fidelity,
                smoothness_mode=cfg.smoothness_mode,
                sensitivity=cfg.sensitivity,
                tilt_angle=cfg.tilt_angle,
            )
        else:
            labels = np.asarray(init_labels, dtype=np.int64)
        durations["initial"] = time.perf_counter() - t0

        t1 = time.perf_counter()
        labels, graph, report, iterations = run_validity_routine(mesh, labels, cfg, op_log)
        durations["validity"] = time.perf_counter() - t1

        t2 = time.perf_counter()
        if report.is_valid:
            labels, graph, report = run_monotonicity_routine(mesh, labels, cfg, op_log)
        durations["monotonicity"] = time.perf_counter() - t2
    except Exception as exc:  # a crash is a result, not an abort
        st = _State(mesh, init_labels if init_labels is not None else
                    np.zeros(mesh.n_triangles, dtype=np.int64), cfg)
        durations["total"] = time.perf_counter() - t0
        return PipelineResult(
            st.labels, st.graph, st.report, "failed",
            durations=durations, error=f"{type(exc).__name__}: {exc}", op_log=op_log,
        )
    durations["total"] = time.perf_counter() - t0
    return PipelineResult(
        labels, graph, report, labeling_status(graph, report),
        iterations=iterations, durations=durations, op_log=op_log,
    )


def metrics_report(mesh: SurfaceMesh, result: PipelineResult) -> dict:
    """JSON-friendly summary; durations are kept in a separate key so the
    rest of the payload is reproducible byte-for-byte."""
    fid_area, fid_uniform = fidelity_score(mesh, result.labels)
    return {
        "schema_version": 1,
        "status": result.status,
        "charts": result.graph.n_charts,
        "boundaries": result.graph.n_boundaries,
        "corners": result.graph.n_corners,
        "turning_points": result.graph.total_turning_points,
        "invalid_charts": len(result.report.invalid_charts),
        "invalid_boundaries": len(result.report.invalid_boundaries),
        "invalid_corners": len(result.report.invalid_corners),
        "fidelity": {"area_weighted": fid_area, "uniform": fid_uniform},
        "feature_edges": feature_edge_stats(mesh, result.labels),
        "label_counts": {
            name: int(c)
            for name, c in zip(
                ("+X", "-X", "+Y", "-Y", "+Z", "-Z"),
                np.bincount(result.labels, minlength=6),
            )
        },
        "iterations": result.iterations,
        "error": result.error,
        "durations_seconds": {k: round(v, 6) for k, v in result.durations.items()},
    }
