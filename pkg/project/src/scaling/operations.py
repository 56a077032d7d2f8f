from __future__ import annotations

import itertools
import math
from typing import Literal, Sequence

import numpy as np

from ..ensemble.domains import AggregateRecord, RunRecord
from ..shared.exceptions import CollapseOverlapException, ValidationException
from .domains import CollapseCost, Crossing, LineFit, ScalingPoint, VariancePeak
from .settings import scaling_settings

Observable = Literal["j2", "entropy", "pss_weight"]

_RUN_FIELDS = {"j2": "j2_bar", "entropy": "s_half_bar", "pss_weight": "pss_weight_bar"}


# ---------------------------------------------------------------------------
# 입력 → 스케일링 점
# ---------------------------------------------------------------------------

def run_value(run: RunRecord, observable: Observable) -> float:
    try:
        return float(getattr(run, _RUN_FIELDS[observable]))
    except KeyError:
        raise ValidationException(f"unknown observable {observable!r}", details={"allowed": list(_RUN_FIELDS)})


def group_runs(runs: Sequence[RunRecord]) -> dict[tuple[int, float], list[RunRecord]]:
    groups: dict[tuple[int, float], list[RunRecord]] = {}
    for run in sorted(runs, key=lambda r: (r.n_qubits, r.width, r.realization)):
        groups.setdefault((run.n_qubits, run.width), []).append(run)
    return groups


def point_from_values(n_qubits: int, width: float, values: np.ndarray) -> ScalingPoint:
    values = values[np.isfinite(values)]
    if values.shape[0] < 2:
        raise ValidationException(
            "at least two finite realizations are needed for a standard error",
            details={"n_qubits": n_qubits, "width": width, "realizations": int(values.shape[0])},
        )
    sigma = float(values.std(ddof=1) / math.sqrt(values.shape[0]))
    return ScalingPoint(n_qubits=n_qubits, width=width, y=float(values.mean()), sigma=sigma)


def points_from_runs(runs: Sequence[RunRecord], observable: Observable = "j2") -> list[ScalingPoint]:
    """(N, w) 별 realization 평균과 표준오차."""
    return [
        point_from_values(n, w, np.array([run_value(r, observable) for r in members], dtype=np.float64))
        for (n, w), members in group_runs(runs).items()
    ]


def points_from_aggregates(aggregates: Sequence[AggregateRecord], observable: Observable = "j2") -> list[ScalingPoint]:
    if observable == "j2":
        return [ScalingPoint(a.n_qubits, a.width, a.j2_mean, a.j2_stderr) for a in aggregates]
    if observable == "entropy":
        return [ScalingPoint(a.n_qubits, a.width, a.s_mean, a.s_stderr) for a in aggregates]
    raise ValidationException(f"aggregate table has no column for {observable!r}")


# ---------------------------------------------------------------------------
# 재스케일
# ---------------------------------------------------------------------------

def rescale(point: ScalingPoint, w_c: float, nu: float, zeta: float) -> tuple[float, float, float]:
    """(w, y, σ) → (x̃, ỹ, σ̃) = ((w − w_c)N^{1/ν}, y/N^{ζ/ν}, σ/N^{ζ/ν})."""
    if not nu > 0:
        raise ValidationException("nu must be positive", details={"nu": nu})
    scale = point.n_qubits ** (zeta / nu)
    x_tilde = (point.width - w_c) * point.n_qubits ** (1.0 / nu)
    return x_tilde, point.y / scale, point.sigma / scale


def inverse_rescale(
    n_qubits: int, x_tilde: float, y_tilde: float, w_c: float, nu: float, zeta: float
) -> tuple[float, float]:
    if not nu > 0:
        raise ValidationException("nu must be positive", details={"nu": nu})
    width = w_c + x_tilde / n_qubits ** (1.0 / nu)
    return width, y_tilde * n_qubits ** (zeta / nu)


def _by_size(points: Sequence[ScalingPoint]) -> dict[int, list[ScalingPoint]]:
    sizes: dict[int, list[ScalingPoint]] = {}
    for point in points:
        sizes.setdefault(point.n_qubits, []).append(point)
    for n, members in sizes.items():
        members.sort(key=lambda p: p.width)
        widths = [p.width for p in members]
        if any(b <= a for a, b in zip(widths, widths[1:])):
            raise ValidationException("duplicate width within one size", details={"n_qubits": n})
    return dict(sorted(sizes.items()))


def check_collapse_input(
    points: Sequence[ScalingPoint],
    min_sizes: int = scaling_settings.MIN_SIZES,
    min_points: int = scaling_settings.MIN_POINTS_PER_SIZE,
) -> dict[int, list[ScalingPoint]]:
    sizes = _by_size(points)
    if len(sizes) < min_sizes:
        raise ValidationException(
            f"collapse needs at least {min_sizes} system sizes", details={"sizes": list(sizes)}
        )
    short = {n: len(m) for n, m in sizes.items() if len(m) < min_points}
    if short:
        raise ValidationException(
            f"collapse needs at least {min_points} widths per size", details={"counts": short}
        )
    return sizes


def rescaled_curves(
    sizes: dict[int, list[ScalingPoint]], w_c: float, nu: float, zeta: float
) -> dict[int, tuple[np.ndarray, np.ndarray, np.ndarray]]:
    curves = {}
    for n, members in sizes.items():
        widths = np.array([p.width for p in members], dtype=np.float64)
        ys = np.array([p.y for p in members], dtype=np.float64)
        sigmas = np.array([p.sigma for p in members], dtype=np.float64)
        scale = n ** (zeta / nu)
        curves[n] = ((widths - w_c) * n ** (1.0 / nu), ys / scale, sigmas / scale)
    return curves


# ---------------------------------------------------------------------------
# 콜랩스 비용
# ---------------------------------------------------------------------------

def cost_from_sizes(sizes: dict[int, list[ScalingPoint]], w_c: float, nu: float, zeta: float) -> CollapseCost:
    if not nu > 0:
        raise ValidationException("nu must be positive", details={"nu": nu})
    curves = rescaled_curves(sizes, w_c, nu, zeta)
    total = 0.0
    contributing = 0
    excluded = 0
    for n_a, (xa, ya, sa) in curves.items():
        acc = np.zeros_like(xa)
        hits = np.zeros(xa.shape[0], dtype=np.int64)
        for n_b, (xb, yb, sb) in curves.items():
            if n_b == n_a:
                continue
            inside = (xa >= xb[0]) & (xa <= xb[-1])
            if not inside.any():
                continue
            xi = xa[inside]
            j = np.clip(np.searchsorted(xb, xi, side="right") - 1, 0, xb.shape[0] - 2)
            t = (xi - xb[j]) / (xb[j + 1] - xb[j])
            y_interp = (1.0 - t) * yb[j] + t * yb[j + 1]
            var_interp = (1.0 - t) ** 2 * sb[j] ** 2 + t ** 2 * sb[j + 1] ** 2
            acc[inside] += (ya[inside] - y_interp) ** 2 / (sa[inside] ** 2 + var_interp)
            hits[inside] += 1
        used = hits > 0
        total += float((acc[used] / hits[used]).sum())
        contributing += int(used.sum())
        excluded += int((~used).sum())
    if contributing == 0:
        raise CollapseOverlapException({"w_c": w_c, "nu": nu, "zeta": zeta})
    return CollapseCost(value=total / contributing, contributing=contributing, excluded=excluded)


def collapse_cost(points: Sequence[ScalingPoint], w_c: float, nu: float, zeta: float) -> CollapseCost:
    """다른 크기들의 구간별 선형 보간 곡선에 대한 정규화 제곱편차의 평균.

    정직한 오차막대와 올바른 파라미터에서 ≈ 1. 어떤 다른 크기와도 x̃ 범위가
    겹치지 않는 점은 제외하고 개수만 센다.
    """
    return cost_from_sizes(check_collapse_input(points), w_c, nu, zeta)


# ---------------------------------------------------------------------------
# 교차점
# ---------------------------------------------------------------------------

def _pair_crossings(wa: np.ndarray, ga: np.ndarray, wb: np.ndarray, gb: np.ndarray) -> list[float]:
    lo, hi = max(wa[0], wb[0]), min(wa[-1], wb[-1])
    if lo > hi:
        return []
    grid = np.unique(np.concatenate([wa, wb]))
    grid = grid[(grid >= lo) & (grid <= hi)]
    diff = np.interp(grid, wa, ga) - np.interp(grid, wb, gb)
    roots = [float(w) for w, d in zip(grid, diff) if d == 0.0]
    for i in range(grid.shape[0] - 1):
        d0, d1 = diff[i], diff[i + 1]
        if d0 * d1 < 0:
            roots.append(float(grid[i] - d0 * (grid[i + 1] - grid[i]) / (d1 - d0)))
    return sorted(roots)


def find_crossings(points: Sequence[ScalingPoint], zeta_over_nu: float) -> list[Crossing]:
    """y/N^{ζ/ν} 곡선 쌍의 교차 w. 곡선은 관측 격자 사이에서 선형."""
    sizes = _by_size(points)
    curves = {
        n: (
            np.array([p.width for p in m], dtype=np.float64),
            np.array([p.y for p in m], dtype=np.float64) / n ** zeta_over_nu,
        )
        for n, m in sizes.items()
    }
    crossings = []
    for n_a, n_b in itertools.combinations(curves, 2):
        wa, ga = curves[n_a]
        wb, gb = curves[n_b]
        if wa.shape[0] < 2 or wb.shape[0] < 2:
            continue
        crossings.extend(Crossing((n_a, n_b), w) for w in _pair_crossings(wa, ga, wb, gb))
    return crossings


# ---------------------------------------------------------------------------
# 분산 피크 / 멱법칙
# ---------------------------------------------------------------------------

def locate_variance_peak(aggregates: Sequence[AggregateRecord], n_qubits: int) -> VariancePeak:
    """realization 간 ⟨J²⟩ 분산이 최대인 w. 격자 끝이면 interior=False."""
    members = sorted((a for a in aggregates if a.n_qubits == n_qubits), key=lambda a: a.width)
    if not members:
        raise ValidationException(f"no aggregates for N={n_qubits}", details={"n_qubits": n_qubits})
    variances = np.array([a.j2_var for a in members], dtype=np.float64)
    index = int(np.argmax(variances))
    return VariancePeak(
        n_qubits=n_qubits,
        width=members[index].width,
        value=float(variances[index]),
        interior=0 < index < len(members) - 1,
    )


def variance_peaks(aggregates: Sequence[AggregateRecord]) -> list[VariancePeak]:
    return [locate_variance_peak(aggregates, n) for n in sorted({a.n_qubits for a in aggregates})]


def _line_fit(x: np.ndarray, y: np.ndarray) -> LineFit:
    slope, intercept = np.polyfit(x, y, 1)
    residual = y - (slope * x + intercept)
    return LineFit(slope=float(slope), intercept=float(intercept), rms_residual=float(np.sqrt(np.mean(residual ** 2))))


def fit_power_law(xs: Sequence[float], ys: Sequence[float]) -> LineFit:
    """log y = slope·log x + intercept (t_s ∝ w^{-a} 등)."""
    x = np.asarray(xs, dtype=np.float64)
    y = np.asarray(ys, dtype=np.float64)
    if x.shape != y.shape or x.shape[0] < 2:
        raise ValidationException("power-law fit needs two or more paired values")
    if (x <= 0).any() or (y <= 0).any():
        raise ValidationException("power-law fit needs positive values")
    return _line_fit(np.log(x), np.log(y))


def fit_entropy_slope(ns: Sequence[int], entropies: Sequence[float]) -> LineFit:
    """S̄ 대 N 의 선형 기울기. 체적 법칙이면 ≈ 1/2."""
    x = np.asarray(ns, dtype=np.float64)
    y = np.asarray(entropies, dtype=np.float64)
    if x.shape != y.shape or x.shape[0] < 2:
        raise ValidationException("entropy slope needs two or more sizes")
    return _line_fit(x, y)


def fit_pss_entropy(ns: Sequence[int], entropies: Sequence[float]) -> LineFit:
    """S̄ = intercept + slope·log₂(N/2 + 1). 약한 무질서(PSS 에 갇힌 동역학)의 엔트로피 성장."""
    x = np.asarray(ns, dtype=np.float64)
    y = np.asarray(entropies, dtype=np.float64)
    if x.shape != y.shape or x.shape[0] < 2:
        raise ValidationException("entropy fit needs two or more sizes")
    if (x < 1).any():
        raise ValidationException("entropy fit needs sizes >= 1")
    return _line_fit(np.log2(x / 2.0 + 1.0), y)
