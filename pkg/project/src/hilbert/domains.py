from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..shared.exceptions import SizeException, ValidationException
from .settings import hilbert_settings


def check_qubit_count(n_qubits: int, minimum: int | None = None) -> None:
    low = hilbert_settings.MIN_QUBITS if minimum is None else minimum
    if not low <= n_qubits <= hilbert_settings.MAX_QUBITS:
        raise SizeException(n_qubits, low, hilbert_settings.MAX_QUBITS)


@dataclass(frozen=True)
class BlochAngles:
    """스핀 코히어런트 상태의 (θ, φ). θ ∈ [0, π], φ ∈ (−π, π]."""
    theta: float
    phi: float

    def __post_init__(self):
        if not 0.0 <= self.theta <= math.pi:
            raise ValidationException(
                f"theta must be in [0, pi], got {self.theta}", details={"theta": self.theta}
            )
        if not -math.pi < self.phi <= math.pi:
            raise ValidationException(
                f"phi must be in (-pi, pi], got {self.phi}", details={"phi": self.phi}
            )

    def as_tuple(self) -> tuple[float, float]:
        return self.theta, self.phi


@dataclass(frozen=True, eq=False)
class QubitRegisterState:
    """N 큐비트 순수 상태.

    인덱스 x의 비트 ℓ이 큐비트 ℓ의 σ_z 고유값을 나타낸다 (0 ↔ +1, 1 ↔ −1).
    진폭 배열은 읽기 전용이며, 변환 연산은 항상 새 상태를 돌려준다.
    """
    n_qubits: int
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.n_qubits < 1 or self.n_qubits > hilbert_settings.MAX_QUBITS:
            raise SizeException(self.n_qubits, 1, hilbert_settings.MAX_QUBITS)
        amps = np.ascontiguousarray(self.amplitudes, dtype=np.complex128)
        if amps.ndim != 1 or amps.shape[0] != 1 << self.n_qubits:
            raise ValidationException(
                f"expected {1 << self.n_qubits} amplitudes, got shape {amps.shape}",
                details={"n_qubits": self.n_qubits},
            )
        norm2 = float(np.vdot(amps, amps).real)
        if abs(norm2 - 1.0) > hilbert_settings.NORM_TOLERANCE:
            raise ValidationException(
                f"state is not normalized: |psi|^2 = {norm2!r}", details={"norm2": norm2}
            )
        if amps is self.amplitudes:
            amps = amps.copy()
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def copy_amplitudes(self) -> np.ndarray:
        """커널에 넘길 쓰기 가능한 복사본."""
        return np.array(self.amplitudes, dtype=np.complex128, copy=True)

    def allclose(self, other: "QubitRegisterState", atol: float = 1e-12) -> bool:
        return self.n_qubits == other.n_qubits and bool(
            np.allclose(self.amplitudes, other.amplitudes, atol=atol, rtol=0.0)
        )
