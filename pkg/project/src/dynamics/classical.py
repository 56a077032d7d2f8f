from __future__ import annotations

import math

import numpy as np

from ..shared.exceptions import ValidationException
from .settings import dynamics_settings


def classical_map_step(x: float, y: float, z: float, k: float) -> tuple[float, float, float]:
    """킥 탑의 고전 사상 (p = π/2, 무질서 없음). 단위구 위의 점을 단위구 위로 보낸다."""
    radius2 = x * x + y * y + z * z
    if abs(radius2 - 1.0) > dynamics_settings.SPHERE_TOLERANCE:
        raise ValidationException(
            "classical map input must lie on the unit sphere",
            details={"radius_squared": radius2},
        )
    c, s = math.cos(k * z), math.sin(k * z)
    return z, y * c + x * s, -x * c + y * s


def classical_trajectory(x: float, y: float, z: float, k: float, steps: int) -> np.ndarray:
    """(steps + 1) × 3 배열, 0행이 초기점."""
    if steps < 0:
        raise ValidationException(f"steps must be >= 0, got {steps}")
    points = np.empty((steps + 1, 3), dtype=np.float64)
    points[0] = (x, y, z)
    for i in range(steps):
        x, y, z = classical_map_step(x, y, z, k)
        points[i + 1] = (x, y, z)
    return points
