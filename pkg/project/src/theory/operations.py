# ------------------------------------------------------------------------------
# 닫힌 형식 기준값과 오라클
# - RMT / PSS / Page 기준값, p=0 무질서 평균 ⟨J²(t)⟩, 특성 시간, Lyapunov 근사
# - 모든 함수는 순수 함수
# ------------------------------------------------------------------------------

from __future__ import annotations

import math

import numpy as np

from ..hilbert.domains import BlochAngles
from ..shared.exceptions import ValidationException
from ..shared.logging import structured_logger as log
from .domains import HeuristicValue, NamedInitialState, UnkickedParams

# Lyapunov 근사 ln k − 1 은 강한 혼돈(k > 6)에서만 의미가 있다
LYAPUNOV_VALID_K = 6.0


def rmt_j_squared(n_qubits: int) -> float:
    return 3.0 * n_qubits / 4.0


def pss_j_squared(n_qubits: int) -> float:
    """j(j+1), j = N/2  (= N²/4 + N/2)"""
    j = n_qubits / 2.0
    return j * (j + 1.0)


def pss_entropy_avg(n_qubits: int, q: int) -> float:
    return math.log2(q + 1) - (2.0 / 3.0) * (q + 1) / (n_qubits - q + 1)


def page_entropy(n_qubits: int, q: int) -> float:
    return q - (1.0 / math.log(2.0)) * 2.0 ** q / 2.0 ** (n_qubits - q + 1)


def x_component_j2(n_qubits: int, angles: BlochAngles) -> float:
    """⟨J_x²⟩ of a coherent state; conserved by the unkicked dynamics."""
    c = math.cos(angles.phi) ** 2 * math.sin(angles.theta) ** 2
    return n_qubits / 4.0 + n_qubits * (n_qubits - 1) / 4.0 * c


def unkicked_j2(t, params: UnkickedParams):
    """무질서 평균 ⟨J²(t)⟩_w (p = 0). t 는 스칼라 또는 배열."""
    times = np.asarray(t, dtype=np.float64)
    if np.any(times < 0):
        raise ValidationException("time must be >= 0")
    if params.outside_derivation:
        log.warning(
            "warning",
            message="unkicked J^2 formula evaluated at N < 3, returning its literal value",
            n_qubits=params.n_qubits,
        )
    n = params.n_qubits
    c = math.cos(params.angles.phi) ** 2 * math.sin(params.angles.theta) ** 2
    decay = np.exp(-(params.width ** 2) * (params.k ** 2) * times ** 2 * (n - 2) / n ** 2)
    value = 3.0 * n / 4.0 + n * (n - 1) / 4.0 * (c + (1.0 - c) * decay)
    return float(value) if value.ndim == 0 else value


def unkicked_j2_limit(params: UnkickedParams) -> float:
    """t → ∞ 포화값 3N/4 + N(N−1)/4 · cos²φ sin²θ"""
    return x_component_j2(params.n_qubits, params.angles) + params.n_qubits / 2.0


def heisenberg_times(n_qubits: int) -> tuple[int, int]:
    return n_qubits + 1, 1 << n_qubits


def saturation_time_estimate(n_qubits: int, k: float, width: float) -> float:
    if k < 0 or width < 0:
        raise ValidationException("k and width must be >= 0")
    if width == 0 or k == 0:
        return math.inf
    return math.sqrt(n_qubits) / (width * k)


def lyapunov_estimate(k: float) -> HeuristicValue:
    if k <= 0:
        raise ValidationException(f"k must be > 0, got {k}")
    valid = k > LYAPUNOV_VALID_K
    if not valid:
        log.warning(
            "warning",
            message="Lyapunov approximation ln(k) - 1 is outside its validity regime",
            k=k,
        )
    return HeuristicValue(value=math.log(k) - 1.0, in_validity_regime=valid)


def k_periodicity(n_qubits: int) -> float:
    """무질서 없는 Floquet 연산자는 k 에 대해 4πN 주기."""
    return 4.0 * math.pi * n_qubits


def angles_to_sphere(angles: BlochAngles) -> tuple[float, float, float]:
    st = math.sin(angles.theta)
    return st * math.cos(angles.phi), st * math.sin(angles.phi), math.cos(angles.theta)


NAMED_INITIAL_STATES: dict[str, NamedInitialState] = {
    state.name: state
    for state in (
        NamedInitialState("generic", BlochAngles(2.25, 1.1), "no special dynamical significance"),
        NamedInitialState("x_eigenstate", BlochAngles(math.pi / 2, 0.0), "zero coherence in the x basis"),
        NamedInitialState("y_eigenstate", BlochAngles(math.pi / 2, math.pi / 2), "maximal coherence in the x basis"),
        NamedInitialState("near_y", BlochAngles(math.pi / 2, 1.9), "close to the y eigenstate"),
        NamedInitialState("near_x", BlochAngles(math.pi / 2, -0.56), "close to the x eigenstate"),
    )
}


def coherent_x_coherence(n_qubits: int, angles: BlochAngles) -> float:
    """코히어런트 상태의 σ_x 기저 l1 코히어런스 (닫힌 형식)."""
    a = math.cos(angles.theta / 2)
    b = complex(math.cos(angles.phi), math.sin(angles.phi)) * math.sin(angles.theta / 2)
    per_qubit = (abs(a + b) + abs(a - b)) ** 2 / 2.0
    return per_qubit ** n_qubits - 1.0
