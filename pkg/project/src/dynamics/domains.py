from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..shared.exceptions import ValidationException
from .settings import dynamics_settings


@dataclass(frozen=True)
class FloquetParams:
    """킥 탑 Floquet 연산자의 파라미터. τ = 1 로 고정되어 k 에 흡수된다."""
    n_qubits: int
    k: float
    p: float = dynamics_settings.DEFAULT_KICK_ANGLE

    def __post_init__(self):
        if self.k < 0:
            raise ValidationException(f"k must be >= 0, got {self.k}", details={"k": self.k})
        if self.n_qubits < 1:
            raise ValidationException(f"n_qubits must be >= 1, got {self.n_qubits}")

    @property
    def tau(self) -> float:
        return 1.0


@dataclass(frozen=True, eq=False)
class DisorderRealization:
    """고정(quenched) 무질서 결합 ε_{ℓℓ'} (ℓ < ℓ'), np.triu_indices(N, 1) 순서로 저장."""
    n_qubits: int
    width: float
    seed: int
    couplings: np.ndarray = field(repr=False)

    def __post_init__(self):
        values = np.array(self.couplings, dtype=np.float64)
        expected = self.n_qubits * (self.n_qubits - 1) // 2
        if values.shape != (expected,):
            raise ValidationException(
                f"expected {expected} couplings for N={self.n_qubits}, got {values.shape}"
            )
        values.flags.writeable = False
        object.__setattr__(self, "couplings", values)

    @property
    def pair_count(self) -> int:
        return self.couplings.shape[0]

    def matrix(self) -> np.ndarray:
        """대칭 N×N 결합 행렬 (대각 0)."""
        full = np.zeros((self.n_qubits, self.n_qubits), dtype=np.float64)
        rows, cols = np.triu_indices(self.n_qubits, 1)
        full[rows, cols] = self.couplings
        full[cols, rows] = self.couplings
        return full

    def same_values(self, other: "DisorderRealization") -> bool:
        return self.n_qubits == other.n_qubits and np.array_equal(self.couplings, other.couplings)


@dataclass(frozen=True, eq=False)
class PhaseTable:
    """σ_x 곱 기저에서의 상호작용 위상 θ(x). Floquet 연산자 첫 인자의 대각 성분."""
    n_qubits: int
    angles: np.ndarray = field(repr=False)

    def __post_init__(self):
        values = np.ascontiguousarray(self.angles, dtype=np.float64)
        if values.shape != (1 << self.n_qubits,):
            raise ValidationException(
                f"phase table must have {1 << self.n_qubits} entries, got {values.shape}"
            )
        values.flags.writeable = False
        object.__setattr__(self, "angles", values)

    def factors(self) -> np.ndarray:
        """exp(−i θ(x))"""
        return np.exp(-1j * self.angles)


@dataclass(frozen=True)
class RecordSchedule:
    """관측량 기록 킥 인덱스(정렬)와 엔트로피 기록 킥 인덱스."""
    kicks: tuple[int, ...]
    entropy_kicks: frozenset[int] = frozenset()

    def __post_init__(self):
        if any(b <= a for a, b in zip(self.kicks, self.kicks[1:])):
            raise ValidationException("record schedule must be strictly increasing")
        if self.kicks and self.kicks[0] < 0:
            raise ValidationException("record schedule cannot contain negative kicks")
        if not self.entropy_kicks <= set(self.kicks):
            raise ValidationException("entropy kicks must be a subset of recorded kicks")

    @property
    def last(self) -> int:
        return self.kicks[-1] if self.kicks else 0
