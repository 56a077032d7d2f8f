from __future__ import annotations

from typing import Optional

import numpy as np
from scipy.linalg import eigvalsh, svdvals

from ..hilbert.domains import QubitRegisterState
from ..hilbert.kernels import apply_gate_all_kernel, fwht_kernel
from ..hilbert.operations import Y_BASIS_V, popcounts, pss_weight
from ..shared.exceptions import ValidationException
from .domains import ObservableSample, ReducedDensity

# 고유값 하한: 이보다 작은 λ 는 −λ log λ 에 기여하지 않는다
EIGENVALUE_FLOOR = 1e-12
EIGENVALUE_SLACK = 1e-10

_Y_BASIS_V_DAG = np.ascontiguousarray(Y_BASIS_V.conj().T)


def _jz_squared_of(amplitudes: np.ndarray, n_qubits: int) -> float:
    eigenvalues = 0.5 * (n_qubits - 2.0 * popcounts(n_qubits))
    probabilities = amplitudes.real ** 2 + amplitudes.imag ** 2
    return float(np.dot(probabilities, eigenvalues * eigenvalues))


def _in_x_basis(state: QubitRegisterState) -> np.ndarray:
    buffer = state.copy_amplitudes()
    return fwht_kernel(buffer, state.n_qubits)


def _in_y_basis(state: QubitRegisterState) -> np.ndarray:
    buffer = state.copy_amplitudes()
    return apply_gate_all_kernel(buffer, _Y_BASIS_V_DAG, state.n_qubits)


def jz_squared(state: QubitRegisterState) -> float:
    return _jz_squared_of(state.amplitudes, state.n_qubits)


def jx_squared(state: QubitRegisterState) -> float:
    return _jz_squared_of(_in_x_basis(state), state.n_qubits)


def jy_squared(state: QubitRegisterState) -> float:
    return _jz_squared_of(_in_y_basis(state), state.n_qubits)


def j_squared(state: QubitRegisterState) -> float:
    return jx_squared(state) + jy_squared(state) + jz_squared(state)


def _check_subsystem(state: QubitRegisterState, q: int) -> None:
    if not 1 <= q <= state.n_qubits - 1:
        raise ValidationException(
            f"subsystem size q={q} must satisfy 1 <= q <= N-1 (N={state.n_qubits})",
            details={"q": q, "n_qubits": state.n_qubits},
        )


def _schmidt_matrix(state: QubitRegisterState, q: int) -> np.ndarray:
    # 행: 나머지 비트 e, 열: 하위 q 비트 a  →  ψ[e·2^q + a]
    return state.amplitudes.reshape(1 << (state.n_qubits - q), 1 << q)


def reduced_density(state: QubitRegisterState, q: int) -> ReducedDensity:
    """하위 q 비트 하위계의 ρ[a,b] = Σ_e ψ[e·2^q+a] ψ*[e·2^q+b]."""
    _check_subsystem(state, q)
    m = _schmidt_matrix(state, q)
    rho = m.T @ m.conj()
    rho = 0.5 * (rho + rho.conj().T)
    return ReducedDensity(q=q, matrix=rho)


def _entropy_bits(eigenvalues: np.ndarray) -> float:
    kept = eigenvalues[eigenvalues >= EIGENVALUE_FLOOR]
    return float(max(-np.sum(kept * np.log2(kept)), 0.0))


def entanglement_entropy(rho: ReducedDensity) -> float:
    """S = −Σ λ log₂ λ (bits)."""
    eigenvalues = eigvalsh(rho.matrix)
    if eigenvalues.min() < -EIGENVALUE_SLACK or eigenvalues.max() > 1.0 + EIGENVALUE_SLACK:
        raise ValidationException(
            "reduced density has eigenvalues outside [0, 1]",
            details={"min": float(eigenvalues.min()), "max": float(eigenvalues.max())},
        )
    return _entropy_bits(eigenvalues)


def subsystem_entropy(state: QubitRegisterState, q: int) -> float:
    """Schmidt 특이값으로 계산한 S_q. entanglement_entropy(reduced_density(state, q)) 와 같다."""
    _check_subsystem(state, q)
    singular = svdvals(_schmidt_matrix(state, q), check_finite=False)
    return _entropy_bits(singular * singular)


def x_basis_coherence(state: QubitRegisterState) -> float:
    """σ_x 곱 기저에서의 l1-노름 코히어런스 (Σ_x |ψ̃_x|)² − 1."""
    total = float(np.sum(np.abs(_in_x_basis(state))))
    return max(total * total - 1.0, 0.0)


def sample_observables(
    state: QubitRegisterState,
    n: int,
    q: Optional[int] = None,
    with_entropy: bool = True,
) -> ObservableSample:
    q = state.n_qubits // 2 if q is None else q
    jx2 = jx_squared(state)
    jy2 = jy_squared(state)
    jz2 = jz_squared(state)
    entropy = subsystem_entropy(state, q) if with_entropy else None
    return ObservableSample(
        n=n,
        jx2=jx2,
        jy2=jy2,
        jz2=jz2,
        j2=jx2 + jy2 + jz2,
        pss_weight=pss_weight(state),
        q_subsystem=q,
        entropy_q=entropy,
        n_qubits=state.n_qubits,
    )
