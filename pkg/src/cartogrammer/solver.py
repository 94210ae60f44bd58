"""Contiguous cartogram construction by iterative force relaxation.

Each pass treats every region as a circular source at its centroid whose
strength depends on the gap between current and desired area; all pool
vertices are displaced by the summed forces, damped by a reduction factor
tied to the overall size error. Shared vertices exist once in the pool, so
shared borders stay shared. A topology check after every pass rolls back and
retries with halved forces whenever a ring would self-intersect or invert.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable, Mapping

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.exceptions import ConvergenceWarning

from .datasets import BoundDataset, Dataset, TargetAreas, bind, compute_target_areas
from .errors import DataError, InputError, TopologyFailureError
from .geometry import (
    MapDocument,
    TopologyReport,
    region_areas,
    region_centroid,
    verify_topology,
)
from .validation import check_map_document

STATUS_CONVERGED = "converged"
STATUS_NOT_CONVERGED = "not-converged"
STATUS_TOPOLOGY_FAILURE = "topology-failure"


@dataclass(frozen=True)
class SolverParams:
    max_iterations: int = 512
    area_tolerance: float = 0.01  # max relative area error at convergence
    max_retries_per_iteration: int = 8
    snapshot_every: int | None = None

    def __post_init__(self):
        if self.max_iterations < 1:
            raise InputError("max_iterations must be >= 1")
        if not 0 < self.area_tolerance < 1:
            raise InputError("area_tolerance must lie strictly between 0 and 1")
        if self.max_retries_per_iteration < 0:
            raise InputError("max_retries_per_iteration must be >= 0")
        if self.snapshot_every is not None and self.snapshot_every < 1:
            raise InputError("snapshot_every must be >= 1 when set")


@dataclass(frozen=True)
class IterationRecord:
    iteration: int
    max_rel_error: float
    size_error: float


@dataclass(frozen=True)
class IterationStats:
    size_error: float
    force_reduction: float
    max_displacement: float


@dataclass(frozen=True)
class CartogramResult:
    """Deformed map plus convergence diagnostics.

    The cartogram always has the input's pool length and ring indexing, even
    on failure — that structural identity is what makes vertex-interpolation
    animation between the views possible.
    """

    cartogram: MapDocument
    iterations: int
    final_max_rel_error: float
    final_size_error: float
    achieved_areas: Mapping[str, float]
    per_iteration_errors: tuple[IterationRecord, ...]
    status: str
    topology_report: TopologyReport | None = None
    failure_detail: str = ""

    @property
    def converged(self) -> bool:
        return self.status == STATUS_CONVERGED


def _check_positive(values: Mapping[str, float], what: str):
    for rid, v in values.items():
        if not (v > 0 and math.isfinite(v)):
            raise DataError(f"non-positive {what} for region {rid!r}: {v}")


def _mean_ratio(areas: Mapping[str, float], targets: Mapping[str, float]) -> float:
    total = 0.0
    for rid, a in areas.items():
        d = targets[rid]
        total += max(a, d) / min(a, d)
    return total / len(areas)


def size_error(areas: Mapping[str, float], targets: TargetAreas) -> float:
    """Mean over regions of max(area, target) / min(area, target); 1 at a
    perfect match."""
    if set(areas) != set(targets.targets):
        raise InputError("areas and targets cover different regions")
    _check_positive(areas, "area")
    _check_positive(targets.targets, "target")
    return _mean_ratio(areas, targets.targets)


def dcn_iterate(
    doc: MapDocument, targets: TargetAreas, *, force_scale: float = 1.0
) -> tuple[MapDocument, IterationStats]:
    """One full force-relaxation pass over the vertex pool.

    Displacements are computed from the pre-iteration state and applied to
    all vertices simultaneously. `force_scale` multiplies the damping factor;
    the solver halves it when retrying a pass that broke topology.
    """
    areas = region_areas(doc)
    goal = targets.targets
    if set(areas) != set(goal):
        raise InputError("targets cover different regions than the map")
    _check_positive(areas, "area")
    _check_positive(goal, "target")

    se = _mean_ratio(areas, goal)
    f = force_scale / (1.0 + se)

    pool = doc.vertex_pool
    delta = np.zeros_like(pool)
    for region in doc.regions:
        rid = region.id
        radius = math.sqrt(areas[rid] / math.pi)
        mass = math.sqrt(goal[rid] / math.pi) - radius
        if mass == 0.0:
            continue
        cx, cy = region_centroid(doc, rid)
        dvec = pool - (cx, cy)
        dist = np.hypot(dvec[:, 0], dvec[:, 1])
        with np.errstate(divide="ignore", invalid="ignore"):
            outside = mass * radius / dist
            t = dist / radius
            inside = mass * t * t * (4.0 - 3.0 * t)
            force = np.where(dist > radius, outside, inside)
            scaled = force / dist  # combine magnitude with the unit vector
            scaled = np.where(dist == 0.0, 0.0, scaled)  # vertex at the centroid
        delta += scaled[:, None] * dvec

    moved = pool + f * delta
    stats = IterationStats(
        size_error=se,
        force_reduction=f,
        max_displacement=float(np.max(np.hypot(f * delta[:, 0], f * delta[:, 1]))),
    )
    return doc.with_pool(moved), stats


def _rescale_to_total(doc: MapDocument, target_total: float) -> MapDocument:
    """Uniformly scale about the bbox center so region areas sum to the target."""
    current = sum(region_areas(doc).values())
    s = math.sqrt(target_total / current)
    if abs(s - 1.0) < 1e-15:
        return doc
    cx = (doc.bbox[0] + doc.bbox[2]) / 2.0
    cy = (doc.bbox[1] + doc.bbox[3]) / 2.0
    center = np.array([cx, cy])
    return doc.with_pool(center + (doc.vertex_pool - center) * s)


def run_dcn(
    doc: MapDocument,
    targets: TargetAreas,
    params: SolverParams | None = None,
    on_snapshot: Callable[[int, MapDocument], None] | None = None,
) -> CartogramResult:
    """Iterate dcn_iterate until every region is within the area tolerance.

    Targets are renormalized each pass against the current total region area
    so drift cannot compound, and the result is rescaled to the original
    total at the end. After each pass the topology is verified against the
    pre-pass state; a violating pass is rolled back and retried with halved
    forces, and the run aborts if retries run out. Non-convergence returns
    the best state seen, marked failed.
    """
    params = params or SolverParams()
    if set(targets.targets) != set(doc.region_ids):
        raise InputError("targets cover different regions than the map")

    shares = {rid: t / targets.total_area for rid, t in targets.targets.items()}
    history: list[IterationRecord] = []
    current = doc
    best = doc
    best_rel = math.inf
    iterations = 0
    status = STATUS_NOT_CONVERGED
    failure_detail = ""

    while True:
        areas = region_areas(current)
        total_now = sum(areas.values())
        goals = {rid: shares[rid] * total_now for rid in areas}
        rel = max(abs(areas[rid] - goals[rid]) / goals[rid] for rid in areas)
        history.append(IterationRecord(iterations, rel, _mean_ratio(areas, goals)))
        if rel < best_rel:
            best_rel = rel
            best = current
        if rel < params.area_tolerance:
            status = STATUS_CONVERGED
            break
        if iterations >= params.max_iterations:
            status = STATUS_NOT_CONVERGED
            failure_detail = (
                f"max relative area error {rel:.4g} after {iterations} iterations"
                f" (tolerance {params.area_tolerance})"
            )
            break

        goal_targets = TargetAreas(targets=goals, total_area=total_now)
        scale = 1.0
        stepped = False
        report = None
        for _ in range(params.max_retries_per_iteration + 1):
            candidate, _stats = dcn_iterate(current, goal_targets, force_scale=scale)
            report = verify_topology(current, candidate)
            if report.ok:
                current = candidate
                stepped = True
                break
            scale *= 0.5  # roll back and push half as hard
        if not stepped:
            status = STATUS_TOPOLOGY_FAILURE
            failure_detail = "; ".join(report.problems) if report else "topology check failed"
            break
        iterations += 1
        if params.snapshot_every and on_snapshot and iterations % params.snapshot_every == 0:
            on_snapshot(iterations, current)

    if status == STATUS_NOT_CONVERGED:
        current = best
    final = _rescale_to_total(current, targets.total_area)
    achieved = region_areas(final)
    final_rel = max(
        abs(achieved[rid] - targets.targets[rid]) / targets.targets[rid] for rid in achieved
    )
    final_report = verify_topology(doc, final)
    if status == STATUS_CONVERGED and not final_report.ok:
        status = STATUS_TOPOLOGY_FAILURE
        failure_detail = "; ".join(final_report.problems)
    return CartogramResult(
        cartogram=final,
        iterations=iterations,
        final_max_rel_error=final_rel,
        final_size_error=_mean_ratio(achieved, targets.targets),
        achieved_areas=achieved,
        per_iteration_errors=tuple(history),
        status=status,
        topology_report=final_report,
        failure_detail=failure_detail,
    )


class DcnCartogram(TransformerMixin, BaseEstimator):
    """Estimator-style front end to the cartogram solver.

    fit(X, y) takes a MapDocument and per-region targets (a TargetAreas, a
    bound or unbound Dataset, or a plain id -> value mapping with None for
    missing data); transform(X) returns the deformed MapDocument. Solver
    hyperparameters follow scikit-learn conventions, so get_params,
    set_params and clone all work.
    """

    def __init__(
        self,
        max_iterations: int = 512,
        area_tolerance: float = 0.01,
        max_retries_per_iteration: int = 8,
        snapshot_every: int | None = None,
    ):
        self.max_iterations = max_iterations
        self.area_tolerance = area_tolerance
        self.max_retries_per_iteration = max_retries_per_iteration
        self.snapshot_every = snapshot_every

    def _params(self) -> SolverParams:
        return SolverParams(
            max_iterations=self.max_iterations,
            area_tolerance=self.area_tolerance,
            max_retries_per_iteration=self.max_retries_per_iteration,
            snapshot_every=self.snapshot_every,
        )

    @staticmethod
    def _coerce_targets(X: MapDocument, y) -> TargetAreas:
        if isinstance(y, TargetAreas):
            return y
        if isinstance(y, BoundDataset):
            return compute_target_areas(X, y)
        if isinstance(y, Dataset):
            return compute_target_areas(X, bind(X, y))
        if isinstance(y, Mapping):
            dataset = Dataset(name="targets", unit="", entries=dict(y))
            return compute_target_areas(X, bind(X, dataset))
        raise InputError(
            "y must be TargetAreas, a Dataset, a BoundDataset, or an id -> value mapping"
        )

    def fit(self, X: MapDocument, y=None):
        if y is None:
            raise InputError("DcnCartogram.fit requires per-region targets as y")
        check_map_document(X)
        result = run_dcn(X, self._coerce_targets(X, y), self._params())
        if result.status == STATUS_TOPOLOGY_FAILURE:
            raise TopologyFailureError(result.failure_detail)
        if result.status == STATUS_NOT_CONVERGED:
            warnings.warn(
                f"cartogram did not converge: {result.failure_detail}",
                ConvergenceWarning,
                stacklevel=2,
            )
        self.result_ = result
        self.cartogram_ = result.cartogram
        self.n_iterations_ = result.iterations
        self.achieved_areas_ = result.achieved_areas
        self.input_ = X
        return self

    def transform(self, X: MapDocument) -> MapDocument:
        if not hasattr(self, "result_"):
            raise InputError("this DcnCartogram instance is not fitted yet")
        if X is not self.input_:
            same = (
                X.region_ids == self.input_.region_ids
                and len(X.vertex_pool) == len(self.input_.vertex_pool)
                and np.array_equal(X.vertex_pool, self.input_.vertex_pool)
            )
            if not same:
                raise InputError("transform expects the same map the estimator was fit on")
        return self.cartogram_

    def __sklearn_tags__(self):
        tags = super().__sklearn_tags__()
        tags.non_deterministic = False
        tags.no_validation = True
        return tags
