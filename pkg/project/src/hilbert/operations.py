from __future__ import annotations

from functools import lru_cache, reduce
from pathlib import Path

import numpy as np
import pandas as pd
from scipy.special import comb

from ..shared.exceptions import ValidationException
from .domains import BlochAngles, QubitRegisterState, check_qubit_count
from .kernels import apply_gate_all_kernel, apply_gate_kernel, fwht_kernel, popcount_table
from .settings import hilbert_settings

HADAMARD = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=np.complex128) / np.sqrt(2.0)

# V† σ_y V = σ_z. 열벡터가 σ_y 고유상태 |+y⟩ = (1, i)/√2, |−y⟩ = (1, −i)/√2
Y_BASIS_V = np.array([[1.0, 1.0], [1.0j, -1.0j]], dtype=np.complex128) / np.sqrt(2.0)


@lru_cache(maxsize=32)
def popcounts(n_qubits: int) -> np.ndarray:
    table = popcount_table(n_qubits)
    table.flags.writeable = False
    return table


def y_rotation(angle: float) -> np.ndarray:
    """exp(−i (angle/2) σ_y)"""
    c, s = np.cos(angle / 2.0), np.sin(angle / 2.0)
    return np.array([[c, -s], [s, c]], dtype=np.complex128)


def check_unitary(u: np.ndarray) -> np.ndarray:
    u = np.asarray(u, dtype=np.complex128)
    if u.shape != (2, 2):
        raise ValidationException(f"expected a 2x2 matrix, got shape {u.shape}")
    deviation = float(np.max(np.abs(u.conj().T @ u - np.eye(2))))
    if deviation > hilbert_settings.UNITARY_TOLERANCE:
        raise ValidationException(
            "single-qubit operator is not unitary", details={"deviation": deviation}
        )
    return np.ascontiguousarray(u)


def coherent_state(n_qubits: int, angles: BlochAngles) -> QubitRegisterState:
    check_qubit_count(n_qubits)
    single = np.array(
        [np.cos(angles.theta / 2.0), np.exp(1j * angles.phi) * np.sin(angles.theta / 2.0)],
        dtype=np.complex128,
    )
    # 모든 큐비트가 같으므로 kron 순서는 무관
    amplitudes = reduce(np.kron, [single] * n_qubits)
    amplitudes /= np.linalg.norm(amplitudes)
    return QubitRegisterState(n_qubits, amplitudes)


def basis_state(n_qubits: int, index: int) -> QubitRegisterState:
    amplitudes = np.zeros(1 << n_qubits, dtype=np.complex128)
    amplitudes[index] = 1.0
    return QubitRegisterState(n_qubits, amplitudes)


def random_state(n_qubits: int, rng: np.random.Generator) -> QubitRegisterState:
    """복소 가우시안 진폭으로 만든 Haar 유사 랜덤 상태."""
    dim = 1 << n_qubits
    amplitudes = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    amplitudes /= np.linalg.norm(amplitudes)
    return QubitRegisterState(n_qubits, amplitudes)


def walsh_hadamard(state: QubitRegisterState) -> QubitRegisterState:
    buffer = state.copy_amplitudes()
    fwht_kernel(buffer, state.n_qubits)
    return QubitRegisterState(state.n_qubits, buffer)


def apply_single_qubit(state: QubitRegisterState, qubit: int, u: np.ndarray) -> QubitRegisterState:
    if not 0 <= qubit < state.n_qubits:
        raise ValidationException(
            f"qubit index {qubit} out of range for N={state.n_qubits}",
            details={"qubit": qubit, "n_qubits": state.n_qubits},
        )
    gate = check_unitary(u)
    buffer = state.copy_amplitudes()
    apply_gate_kernel(buffer, gate, buffer.shape[0] >> 1, qubit)
    return QubitRegisterState(state.n_qubits, buffer)


def apply_to_all_qubits(state: QubitRegisterState, u: np.ndarray) -> QubitRegisterState:
    gate = check_unitary(u)
    buffer = state.copy_amplitudes()
    apply_gate_all_kernel(buffer, gate, state.n_qubits)
    return QubitRegisterState(state.n_qubits, buffer)


def pss_weight(state: QubitRegisterState) -> float:
    """순열대칭 부분공간(Dicke 상태 N+1개)으로의 사영 가중치."""
    n = state.n_qubits
    counts = popcounts(n)
    amps = state.amplitudes
    sums = np.bincount(counts, weights=amps.real, minlength=n + 1) + 1j * np.bincount(
        counts, weights=amps.imag, minlength=n + 1
    )
    weight = float(np.sum(np.abs(sums) ** 2 / comb(n, np.arange(n + 1))))
    return min(max(weight, 0.0), 1.0)


# ---------------------------------------------------------------------
# 디버그 덤프 (index,re,im)
# ---------------------------------------------------------------------

def dump_state_csv(state: QubitRegisterState, path: Path | str) -> None:
    frame = pd.DataFrame(
        {
            "index": np.arange(state.dim),
            "re": state.amplitudes.real,
            "im": state.amplitudes.imag,
        }
    )
    frame.to_csv(path, index=False, float_format="%.17g")


def load_state_csv(path: Path | str) -> QubitRegisterState:
    frame = pd.read_csv(path).sort_values("index")
    dim = len(frame)
    n_qubits = dim.bit_length() - 1
    if dim != 1 << n_qubits:
        raise ValidationException(f"state dump has {dim} rows, not a power of two")
    amplitudes = frame["re"].to_numpy() + 1j * frame["im"].to_numpy()
    return QubitRegisterState(n_qubits, amplitudes)
