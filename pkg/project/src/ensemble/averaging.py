from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from ..observables.domains import ObservableSample
from ..shared.exceptions import ValidationException
from .domains import WindowAverages


def _trapezoid_mean(ns: np.ndarray, values: np.ndarray) -> float:
    if ns.shape[0] == 1:
        return float(values[0])
    return float(np.trapezoid(values, ns) / (ns[-1] - ns[0]))


def time_average(
    samples: Sequence[ObservableSample], n1: int, n2: int, require_entropy: bool = False
) -> WindowAverages:
    """[n₁, n₂] 안의 기록만 사용한 시간 평균. 기록 간격이 고르지 않으면 사다리꼴 가중.

    require_entropy 이면 창 안에 엔트로피 기록이 없을 때 NaN 대신 예외.
    """
    if n2 < n1:
        raise ValidationException("averaging window must satisfy n1 <= n2", details={"n1": n1, "n2": n2})
    window = sorted((s for s in samples if n1 <= s.n <= n2), key=lambda s: s.n)
    if not window:
        raise ValidationException("no recorded samples inside the averaging window", details={"n1": n1, "n2": n2})

    ns = np.array([s.n for s in window], dtype=np.float64)

    def column(name: str) -> float:
        return _trapezoid_mean(ns, np.array([getattr(s, name) for s in window], dtype=np.float64))

    with_entropy = [s for s in window if s.entropy_q is not None]
    if with_entropy:
        entropy = _trapezoid_mean(
            np.array([s.n for s in with_entropy], dtype=np.float64),
            np.array([s.entropy_q for s in with_entropy], dtype=np.float64),
        )
    elif require_entropy:
        raise ValidationException(
            "no entropy samples inside the averaging window", details={"n1": n1, "n2": n2, "samples": len(window)}
        )
    else:
        entropy = math.nan

    return WindowAverages(
        j2=column("j2"),
        jx2=column("jx2"),
        jy2=column("jy2"),
        jz2=column("jz2"),
        pss_weight=column("pss_weight"),
        entropy=entropy,
        sample_count=len(window),
        entropy_count=len(with_entropy),
    )


def downsample(samples: Sequence[ObservableSample], points: int) -> tuple[ObservableSample, ...]:
    """포화 추적용으로 고르게 골라낸 부분열 (첫/끝 포함)."""
    if len(samples) <= points:
        return tuple(samples)
    picks = np.unique(np.linspace(0, len(samples) - 1, points).round().astype(int))
    return tuple(samples[i] for i in picks)
