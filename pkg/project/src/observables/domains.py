from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ..shared.exceptions import ValidationException

TRAJECTORY_COLUMNS = ["n", "jx2", "jy2", "jz2", "j2", "s_q", "pss_weight"]


@dataclass(frozen=True)
class ObservableSample:
    """한 시점(킥 n)의 관측량 기록. 엔트로피는 스케줄 밖이면 None."""
    n: int
    jx2: float
    jy2: float
    jz2: float
    j2: float
    pss_weight: float
    q_subsystem: int
    entropy_q: Optional[float] = None
    n_qubits: Optional[int] = None

    tolerance: float = 1e-9

    def __post_init__(self):
        if self.j2 < -self.tolerance or not -self.tolerance <= self.pss_weight <= 1.0 + self.tolerance:
            raise ValidationException(
                "observable sample out of range", details={"n": self.n, "j2": self.j2, "pss_weight": self.pss_weight}
            )
        if self.n_qubits is not None:
            j = self.n_qubits / 2.0
            if self.j2 > j * (j + 1.0) + self.tolerance:
                raise ValidationException(
                    "J^2 exceeds j(j+1)", details={"n": self.n, "j2": self.j2, "n_qubits": self.n_qubits}
                )
        if self.entropy_q is not None:
            ceiling = self.q_subsystem if self.n_qubits is None else min(self.q_subsystem, self.n_qubits - self.q_subsystem)
            if not -self.tolerance <= self.entropy_q <= ceiling + self.tolerance:
                raise ValidationException(
                    "subsystem entropy out of range",
                    details={"n": self.n, "entropy_q": self.entropy_q, "ceiling": ceiling},
                )

    def to_row(self) -> dict:
        return {
            "n": self.n,
            "jx2": self.jx2,
            "jy2": self.jy2,
            "jz2": self.jz2,
            "j2": self.j2,
            "s_q": math.nan if self.entropy_q is None else self.entropy_q,
            "pss_weight": self.pss_weight,
        }


@dataclass(frozen=True, eq=False)
class ReducedDensity:
    """하위계(하위 q 비트)의 축약 밀도행렬 ρ_q, 2^q × 2^q."""
    q: int
    matrix: np.ndarray = field(repr=False)

    hermitian_tolerance: float = 1e-12
    trace_tolerance: float = 1e-10

    def __post_init__(self):
        rho = np.asarray(self.matrix, dtype=np.complex128)
        dim = 1 << self.q
        if rho.shape != (dim, dim):
            raise ValidationException(f"reduced density must be {dim}x{dim}, got {rho.shape}")
        asym = float(np.max(np.abs(rho - rho.conj().T))) if rho.size else 0.0
        if asym > self.hermitian_tolerance:
            raise ValidationException("reduced density is not Hermitian", details={"deviation": asym})
        trace = complex(np.trace(rho))
        if abs(trace - 1.0) > self.trace_tolerance:
            raise ValidationException("reduced density does not have unit trace", details={"trace": abs(trace)})
        object.__setattr__(self, "matrix", rho)

    @property
    def dim(self) -> int:
        return 1 << self.q

    def purity(self) -> float:
        return float(np.real(np.vdot(self.matrix, self.matrix)))
