from __future__ import annotations

from dataclasses import dataclass

from ..hilbert.domains import BlochAngles
from ..shared.exceptions import ValidationException


@dataclass(frozen=True)
class UnkickedParams:
    """p = 0 (킥 없음) 해석해의 파라미터."""
    n_qubits: int
    k: float
    width: float
    angles: BlochAngles

    def __post_init__(self):
        if self.width < 0:
            raise ValidationException(f"disorder width must be >= 0, got {self.width}")
        if self.n_qubits < 2:
            raise ValidationException(f"n_qubits must be >= 2, got {self.n_qubits}")

    @property
    def outside_derivation(self) -> bool:
        # 지수 (N−2) 는 N ≥ 3 을 전제로 유도됨
        return self.n_qubits < 3


@dataclass(frozen=True)
class HeuristicValue:
    """유효 범위 밖일 수 있는 근사값."""
    value: float
    in_validity_regime: bool


@dataclass(frozen=True)
class NamedInitialState:
    name: str
    angles: BlochAngles
    note: str
