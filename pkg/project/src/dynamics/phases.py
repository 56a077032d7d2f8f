# ------------------------------------------------------------------------------
# 상호작용 위상표 θ(x) = (k/2N) Σ_{ℓ<ℓ'} (1+ε_{ℓℓ'}) s_ℓ(x) s_ℓ'(x)
# - 균일 부분: (M(x)² − N)/2, M(x) = Σ_ℓ s_ℓ(x) = N − 2·popcount(x)
# - 무질서 부분: 반사 Gray 코드 순회, 한 스핀 f 뒤집을 때 Δ = −2 s_f h_f
#   (h_ℓ = Σ_{ℓ'≠ℓ} ε_{ℓℓ'} s_ℓ' 를 O(N)으로 갱신) → 전체 O(2^N · N)
# - 브루트포스 O(2^N · N²) 버전은 테스트 오라클
# ------------------------------------------------------------------------------

import numpy as np
from numba import njit

from ..hilbert.operations import popcounts
from ..shared.exceptions import ValidationException
from ..shared.logging import structured_logger as log
from ..theory.operations import k_periodicity
from .domains import DisorderRealization, FloquetParams, PhaseTable
from .settings import dynamics_settings


@njit(cache=True, nogil=True)
def gray_code_disorder_kernel(eps, n_qubits):
    size = 1 << n_qubits
    out = np.empty(size, dtype=np.float64)
    spins = np.ones(n_qubits, dtype=np.float64)
    fields = np.zeros(n_qubits, dtype=np.float64)
    total = 0.0
    for a in range(n_qubits):
        for b in range(n_qubits):
            if a != b:
                fields[a] += eps[a, b]
        for b in range(a + 1, n_qubits):
            total += eps[a, b]
    out[0] = total
    for i in range(1, size):
        f = 0
        while ((i >> f) & 1) == 0:
            f += 1
        sf = spins[f]
        total -= 2.0 * sf * fields[f]
        for ell in range(n_qubits):
            if ell != f:
                fields[ell] -= 2.0 * eps[ell, f] * sf
        spins[f] = -sf
        out[i ^ (i >> 1)] = total
    return out


def _check_compatible(params: FloquetParams, disorder: DisorderRealization) -> None:
    if params.n_qubits != disorder.n_qubits:
        raise ValidationException(
            "Floquet parameters and disorder realization disagree on N",
            details={"params": params.n_qubits, "disorder": disorder.n_qubits},
        )


def check_k_regime(params: FloquetParams) -> bool:
    """k 가 4πN 주기에 가까우면 경고만 남긴다. 정상 범위면 True."""
    period = k_periodicity(params.n_qubits)
    if params.k > dynamics_settings.K_PERIOD_WARN_FRACTION * period:
        log.warning(
            "warning",
            message="k is not small compared with the 4*pi*N periodicity of the clean Floquet operator",
            k=params.k,
            n_qubits=params.n_qubits,
            period=period,
        )
        return False
    return True


def uniform_phase_part(n_qubits: int) -> np.ndarray:
    magnetization = n_qubits - 2 * popcounts(n_qubits).astype(np.float64)
    return 0.5 * (magnetization * magnetization - n_qubits)


def build_phase_table(params: FloquetParams, disorder: DisorderRealization) -> PhaseTable:
    _check_compatible(params, disorder)
    check_k_regime(params)
    n = params.n_qubits
    disorder_part = gray_code_disorder_kernel(np.ascontiguousarray(disorder.matrix()), n)
    angles = (params.k / (2.0 * n)) * (uniform_phase_part(n) + disorder_part)
    return PhaseTable(n_qubits=n, angles=angles)


def build_phase_table_bruteforce(params: FloquetParams, disorder: DisorderRealization) -> PhaseTable:
    _check_compatible(params, disorder)
    n = params.n_qubits
    index = np.arange(1 << n)
    spins = 1.0 - 2.0 * ((index[:, None] >> np.arange(n)[None, :]) & 1)
    eps = disorder.matrix()
    total = np.zeros(1 << n, dtype=np.float64)
    for a in range(n):
        for b in range(a + 1, n):
            total += (1.0 + eps[a, b]) * spins[:, a] * spins[:, b]
    return PhaseTable(n_qubits=n, angles=(params.k / (2.0 * n)) * total)
