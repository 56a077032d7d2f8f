from __future__ import annotations

import itertools
import math
from typing import Optional, Sequence

import numpy as np
from scipy.optimize import minimize

from ..ensemble.domains import RunRecord
from ..shared.exceptions import CollapseOverlapException
from ..shared.logging import StructuredLogger, structured_logger
from .domains import CollapseFit, ScalingPoint, SearchBox
from .operations import Observable, cost_from_sizes, check_collapse_input, group_runs, run_value
from .settings import ScalingSettings, scaling_settings


def _objective(sizes: dict[int, list[ScalingPoint]]):
    def cost(params: np.ndarray) -> float:
        w_c, nu, zeta = (float(v) for v in params)
        if not nu > 0:
            return math.inf
        try:
            return cost_from_sizes(sizes, w_c, nu, zeta).value
        except CollapseOverlapException:
            return math.inf

    return cost


def grid_scan(sizes: dict[int, list[ScalingPoint]], box: SearchBox, grid_size: int) -> tuple[np.ndarray, float]:
    """박스 안 grid_size³ 격자에서 비용 최소점."""
    cost = _objective(sizes)
    axes = [np.linspace(lo, hi, grid_size) for lo, hi in box.bounds]
    best, best_value = None, math.inf
    for candidate in itertools.product(*axes):
        value = cost(np.array(candidate))
        if value < best_value:
            best, best_value = np.array(candidate), value
    if best is None:
        raise CollapseOverlapException({"search_box": {"w_c": box.w_c, "nu": box.nu, "zeta": box.zeta}})
    return best, best_value


def _simplex(sizes: dict[int, list[ScalingPoint]], start: np.ndarray, box: SearchBox, settings: ScalingSettings):
    return minimize(
        _objective(sizes),
        x0=start,
        method="Nelder-Mead",
        bounds=box.bounds,
        options={
            "maxiter": settings.MAX_ITERATIONS,
            "xatol": settings.SIMPLEX_XATOL,
            "fatol": settings.SIMPLEX_FATOL,
        },
    )


def _resample_from_runs(
    groups: dict[tuple[int, float], list[RunRecord]],
    observable: Observable,
    originals: dict[tuple[int, float], ScalingPoint],
    rng: np.random.Generator,
) -> list[ScalingPoint]:
    points = []
    for key, members in groups.items():
        values = np.array([run_value(r, observable) for r in members], dtype=np.float64)
        values = values[np.isfinite(values)]
        drawn = values[rng.integers(0, values.shape[0], values.shape[0])]
        sigma = float(drawn.std(ddof=1) / math.sqrt(drawn.shape[0]))
        if not sigma > 0:
            sigma = originals[key].sigma
        points.append(ScalingPoint(key[0], key[1], float(drawn.mean()), sigma))
    return points


def _resample_parametric(points: Sequence[ScalingPoint], rng: np.random.Generator) -> list[ScalingPoint]:
    return [ScalingPoint(p.n_qubits, p.width, float(rng.normal(p.y, p.sigma)), p.sigma) for p in points]


def fit_collapse(
    points: Sequence[ScalingPoint],
    box: SearchBox,
    *,
    seed: int = 0,
    bootstrap: Optional[int] = None,
    runs: Optional[Sequence[RunRecord]] = None,
    observable: Observable = "j2",
    grid_size: Optional[int] = None,
    settings: ScalingSettings = scaling_settings,
    logger: StructuredLogger = structured_logger,
) -> CollapseFit:
    """(w_c, ν, ζ) 최소화: 격자 탐색 → Nelder–Mead → 부트스트랩 오차.

    runs 가 주어지면 각 (N, w) 안에서 realization 을 복원추출하고,
    없으면 y ~ Normal(y, σ) 로 다시 뽑는다.
    """
    sizes = check_collapse_input(points, settings.MIN_SIZES, settings.MIN_POINTS_PER_SIZE)
    grid_size = settings.GRID_SIZE if grid_size is None else grid_size
    bootstrap = settings.BOOTSTRAP_SAMPLES if bootstrap is None else bootstrap

    start, grid_value = grid_scan(sizes, box, grid_size)
    result = _simplex(sizes, start, box, settings)
    best = np.asarray(result.x, dtype=np.float64)
    if not np.isfinite(result.fun) or result.fun > grid_value:
        best = start
    if not result.success:
        logger.warning("fit_not_converged", message=str(result.message), iterations=int(result.nit))

    final = cost_from_sizes(sizes, *(float(v) for v in best))

    rng = np.random.default_rng(seed)
    groups = group_runs(runs) if runs is not None else None
    originals = {(p.n_qubits, p.width): p for p in points}
    replicates = []
    for _ in range(bootstrap):
        sample = (
            _resample_from_runs(groups, observable, originals, rng)
            if groups is not None
            else _resample_parametric(points, rng)
        )
        refit = _simplex(check_collapse_input(sample, settings.MIN_SIZES, settings.MIN_POINTS_PER_SIZE), best, box, settings)
        if np.isfinite(refit.fun):
            replicates.append(refit.x)
    errors = np.std(np.array(replicates), axis=0, ddof=1) if len(replicates) > 1 else np.zeros(3)

    fit = CollapseFit(
        w_c=float(best[0]),
        nu=float(best[1]),
        zeta=float(best[2]),
        cost=final.value,
        w_c_err=float(errors[0]),
        nu_err=float(errors[1]),
        zeta_err=float(errors[2]),
        excluded_points=final.excluded,
        converged=bool(result.success),
        iterations=int(result.nit),
        evaluations=int(result.nfev),
        bootstrap_samples=len(replicates),
    )
    logger.info(
        "collapse_fit",
        w_c=fit.w_c,
        nu=fit.nu,
        zeta=fit.zeta,
        cost=fit.cost,
        excluded_points=fit.excluded_points,
        bootstrap_samples=fit.bootstrap_samples,
    )
    return fit
