from __future__ import annotations

import math
from functools import reduce
from typing import Iterable, Optional

import numpy as np
from numba import njit
from scipy.linalg import expm

from ..hilbert.domains import QubitRegisterState
from ..hilbert.kernels import apply_gate_all_kernel, diagonal_kernel, fwht_kernel
from ..hilbert.operations import y_rotation
from ..observables.domains import ObservableSample
from ..observables.operations import sample_observables
from ..shared.exceptions import ValidationException
from .domains import DisorderRealization, FloquetParams, PhaseTable, RecordSchedule
from .settings import dynamics_settings


@njit(cache=True, nogil=True)
def floquet_kernel(state, rotation, factors, n_qubits, n_steps):
    """U_w^n_steps 를 in-place 적용: y 회전 → σ_x 기저 → 위상 → 복귀."""
    for _ in range(n_steps):
        apply_gate_all_kernel(state, rotation, n_qubits)
        fwht_kernel(state, n_qubits)
        diagonal_kernel(state, factors)
        fwht_kernel(state, n_qubits)
    return state


class FloquetPropagator:
    """한 (k, 무질서) 쌍에 대해 회전 행렬과 위상 인자를 미리 계산해 두는 전파자."""

    def __init__(self, params: FloquetParams, phases: PhaseTable):
        if params.n_qubits != phases.n_qubits:
            raise ValidationException(
                "phase table and Floquet parameters disagree on N",
                details={"params": params.n_qubits, "phases": phases.n_qubits},
            )
        self.params = params
        self._rotation = np.ascontiguousarray(y_rotation(params.p))
        self._factors = np.ascontiguousarray(phases.factors())

    @property
    def n_qubits(self) -> int:
        return self.params.n_qubits

    def advance(self, buffer: np.ndarray, n_steps: int) -> np.ndarray:
        if n_steps > 0:
            floquet_kernel(buffer, self._rotation, self._factors, self.n_qubits, n_steps)
        return buffer

    def step(self, state: QubitRegisterState) -> QubitRegisterState:
        if state.n_qubits != self.n_qubits:
            raise ValidationException(
                "state and propagator disagree on N",
                details={"state": state.n_qubits, "propagator": self.n_qubits},
            )
        return QubitRegisterState(state.n_qubits, self.advance(state.copy_amplitudes(), 1))


def floquet_step(state: QubitRegisterState, phases: PhaseTable, params: FloquetParams) -> QubitRegisterState:
    return FloquetPropagator(params, phases).step(state)


# ---------------------------------------------------------------------
# 기록 스케줄
# ---------------------------------------------------------------------

def _log_spaced(start: int, stop: int, per_decade: int) -> list[int]:
    if stop <= start:
        return []
    decades = math.log10(stop) - math.log10(max(start, 1))
    count = max(int(math.ceil(decades * per_decade)) + 1, 2)
    points = np.unique(np.rint(np.logspace(math.log10(max(start, 1)), math.log10(stop), count)).astype(np.int64))
    return [int(p) for p in points if start < p <= stop]


def _entropy_subset(kicks: list[int], entropy_stride: int) -> frozenset[int]:
    if not kicks:
        return frozenset()
    chosen = {r for r in kicks if r % entropy_stride == 0}
    chosen.update((kicks[0], kicks[-1]))
    return frozenset(chosen)


def default_record_schedule(
    n_max: int,
    obs_stride: int = 1,
    entropy_stride: int = 10,
    dense_until: Optional[int] = None,
    per_decade: Optional[int] = None,
) -> RecordSchedule:
    """n ≤ dense_until 까지 obs_stride 간격, 이후 로그 간격 (디케이드당 per_decade 점)."""
    if n_max < 0:
        raise ValidationException(f"n_max must be >= 0, got {n_max}")
    if obs_stride < 1 or entropy_stride < 1:
        raise ValidationException("record strides must be >= 1")
    dense_until = dynamics_settings.DENSE_RECORD_UNTIL if dense_until is None else dense_until
    per_decade = dynamics_settings.LOG_POINTS_PER_DECADE if per_decade is None else per_decade
    dense_stop = min(n_max, dense_until)
    kicks = set(range(0, dense_stop + 1, obs_stride))
    kicks.update(_log_spaced(dense_stop, n_max, per_decade))
    kicks.add(n_max)
    ordered = sorted(kicks)
    return RecordSchedule(kicks=tuple(ordered), entropy_kicks=_entropy_subset(ordered, entropy_stride))


def windowed_record_schedule(
    n_max: int,
    window: tuple[int, int],
    obs_stride: int,
    entropy_stride: int,
) -> RecordSchedule:
    """창 [n₁, n₂] 안에서는 obs_stride 간격, 창 밖에서는 포화 추적용 로그 간격."""
    n1, n2 = window
    if not 0 <= n1 < n2 <= n_max:
        raise ValidationException("window must satisfy 0 <= n1 < n2 <= n_max", details={"window": [n1, n2]})
    if obs_stride < 1 or entropy_stride < 1:
        raise ValidationException("record strides must be >= 1")
    trace = default_record_schedule(n_max, obs_stride=1, entropy_stride=entropy_stride)
    outside = [r for r in trace.kicks if r < n1 or r > n2]
    inside = sorted(set(range(n1, n2 + 1, obs_stride)) | {n2})
    # 창 안의 엔트로피 기록은 n₁ 부터 세며 양 끝을 항상 포함
    every = math.ceil(entropy_stride / obs_stride)
    entropy_kicks = set(inside[::every]) | {n1, n2}
    entropy_kicks.update(_entropy_subset(outside, entropy_stride))
    return RecordSchedule(kicks=tuple(sorted(set(outside) | set(inside))), entropy_kicks=frozenset(entropy_kicks))


# ---------------------------------------------------------------------
# 시간 전개
# ---------------------------------------------------------------------

def iter_evolution(
    state: QubitRegisterState,
    phases: PhaseTable,
    params: FloquetParams,
    n_kicks: int,
    schedule: Optional[RecordSchedule] = None,
    q: Optional[int] = None,
) -> Iterable[ObservableSample]:
    if n_kicks < 0:
        raise ValidationException(f"n_kicks must be >= 0, got {n_kicks}")
    schedule = default_record_schedule(n_kicks) if schedule is None else schedule
    if schedule.last > n_kicks:
        raise ValidationException(
            "record schedule extends beyond n_kicks",
            details={"last": schedule.last, "n_kicks": n_kicks},
        )
    propagator = FloquetPropagator(params, phases)
    buffer = state.copy_amplitudes()
    current = 0
    for kick in schedule.kicks:
        propagator.advance(buffer, kick - current)
        current = kick
        # 누적 반올림 오차 제거
        buffer /= np.linalg.norm(buffer)
        snapshot = QubitRegisterState(state.n_qubits, buffer)
        yield sample_observables(snapshot, kick, q=q, with_entropy=kick in schedule.entropy_kicks)
    propagator.advance(buffer, n_kicks - current)


def evolve(
    state: QubitRegisterState,
    phases: PhaseTable,
    params: FloquetParams,
    n_kicks: int,
    schedule: Optional[RecordSchedule] = None,
    q: Optional[int] = None,
) -> list[ObservableSample]:
    return list(iter_evolution(state, phases, params, n_kicks, schedule, q))


def evolve_state(
    state: QubitRegisterState, phases: PhaseTable, params: FloquetParams, n_kicks: int
) -> QubitRegisterState:
    """관측 없이 U_w^n |ψ⟩ 만 계산."""
    propagator = FloquetPropagator(params, phases)
    buffer = propagator.advance(state.copy_amplitudes(), n_kicks)
    buffer /= np.linalg.norm(buffer)
    return QubitRegisterState(state.n_qubits, buffer)


# ---------------------------------------------------------------------
# 밀집행렬 오라클 (작은 N 테스트 전용)
# ---------------------------------------------------------------------

_PAULI_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
_PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
_PAULI_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)


def local_pauli(n_qubits: int, qubit: int, pauli: np.ndarray) -> np.ndarray:
    """큐비트 ℓ ↔ 비트 ℓ 규약에 맞춘 I ⊗ … ⊗ σ ⊗ … ⊗ I (kron 의 왼쪽이 최상위 비트)."""
    factors = [pauli if position == qubit else np.eye(2) for position in reversed(range(n_qubits))]
    return reduce(np.kron, factors)


def collective_spin(n_qubits: int, axis: str) -> np.ndarray:
    pauli = {"x": _PAULI_X, "y": _PAULI_Y, "z": _PAULI_Z}[axis]
    return 0.5 * sum(local_pauli(n_qubits, ell, pauli) for ell in range(n_qubits))


def dense_floquet_matrix(params: FloquetParams, disorder: DisorderRealization) -> np.ndarray:
    n = params.n_qubits
    if n > dynamics_settings.DENSE_ORACLE_MAX_QUBITS:
        raise ValidationException(f"dense Floquet matrix limited to N <= {dynamics_settings.DENSE_ORACLE_MAX_QUBITS}")
    eps = disorder.matrix()
    xs = [local_pauli(n, ell, _PAULI_X) for ell in range(n)]
    interaction = np.zeros((1 << n, 1 << n), dtype=np.complex128)
    for a in range(n):
        for b in range(a + 1, n):
            interaction += (1.0 + eps[a, b]) * (xs[a] @ xs[b])
    interaction *= params.k / (2.0 * n)
    kick = 0.5 * params.p * sum(local_pauli(n, ell, _PAULI_Y) for ell in range(n))
    return expm(-1j * interaction) @ expm(-1j * kick)
