# ------------------------------------------------------------------------------
# 상태벡터 in-place 커널 (numba)
# - 모든 커널은 연속(contiguous) complex128 버퍼를 직접 수정한다
# - nogil=True: 스레드 풀에서 realization 여러 개를 동시에 돌릴 수 있도록 GIL 해제
# - 인덱스 규약: 큐비트 m ↔ 비트 m, 쌍 (i1, i2)는 비트 m만 다르다
# ------------------------------------------------------------------------------

import numpy as np
from numba import njit

_INV_SQRT2 = 1.0 / np.sqrt(2.0)


@njit(cache=True, nogil=True)
def apply_gate_kernel(state, gate, nstates, m):
    """큐비트 m에 2×2 게이트 적용. nstates = len(state) // 2."""
    tk = 1 << m
    g00 = gate[0, 0]
    g01 = gate[0, 1]
    g10 = gate[1, 0]
    g11 = gate[1, 1]
    for g in range(nstates):
        i1 = ((g >> m) << (m + 1)) + (g & (tk - 1))
        i2 = i1 + tk
        a = state[i1]
        b = state[i2]
        state[i1] = g00 * a + g01 * b
        state[i2] = g10 * a + g11 * b
    return state


@njit(cache=True, nogil=True)
def apply_gate_all_kernel(state, gate, n_qubits):
    """같은 게이트를 모든 큐비트에 적용 (곱상태 회전)."""
    nstates = state.shape[0] >> 1
    for m in range(n_qubits):
        apply_gate_kernel(state, gate, nstates, m)
    return state


@njit(cache=True, nogil=True)
def fwht_kernel(state, n_qubits):
    """정규화된 Walsh–Hadamard 변환. stride 2^m 버터플라이, 단계마다 1/√2."""
    size = state.shape[0]
    half = 1
    for _ in range(n_qubits):
        step = half << 1
        for start in range(0, size, step):
            for i1 in range(start, start + half):
                i2 = i1 + half
                a = state[i1]
                b = state[i2]
                state[i1] = (a + b) * _INV_SQRT2
                state[i2] = (a - b) * _INV_SQRT2
        half = step
    return state


@njit(cache=True, nogil=True)
def diagonal_kernel(state, factors):
    for i in range(state.shape[0]):
        state[i] *= factors[i]
    return state


@njit(cache=True, nogil=True)
def popcount_table(n_qubits):
    size = 1 << n_qubits
    counts = np.zeros(size, dtype=np.int64)
    for x in range(1, size):
        counts[x] = counts[x >> 1] + (x & 1)
    return counts
