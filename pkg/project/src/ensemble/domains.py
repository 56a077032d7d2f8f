from __future__ import annotations

from dataclasses import dataclass, field

from ..observables.domains import ObservableSample

RUN_COLUMNS = ["N", "w", "k", "theta", "phi", "realization", "seed", "j2_bar", "s_half_bar", "pss_weight_bar"]
AGGREGATE_COLUMNS = ["N", "w", "k", "j2_mean", "j2_stderr", "j2_var", "s_mean", "s_stderr", "R"]


@dataclass(frozen=True)
class WindowAverages:
    """창 [n₁, n₂] 시간 평균 (기록 간격 가중 사다리꼴)."""
    j2: float
    jx2: float
    jy2: float
    jz2: float
    pss_weight: float
    entropy: float
    sample_count: int
    entropy_count: int


@dataclass(frozen=True)
class RunRecord:
    n_qubits: int
    width: float
    k: float
    theta: float
    phi: float
    realization: int
    seed: int
    j2_bar: float
    s_half_bar: float
    pss_weight_bar: float
    trace: tuple[ObservableSample, ...] = field(default=(), repr=False, compare=False)

    def to_row(self) -> dict:
        return {
            "N": self.n_qubits,
            "w": self.width,
            "k": self.k,
            "theta": self.theta,
            "phi": self.phi,
            "realization": self.realization,
            "seed": self.seed,
            "j2_bar": self.j2_bar,
            "s_half_bar": self.s_half_bar,
            "pss_weight_bar": self.pss_weight_bar,
        }


@dataclass(frozen=True)
class AggregateRecord:
    n_qubits: int
    width: float
    k: float
    j2_mean: float
    j2_stderr: float
    j2_var: float
    s_mean: float
    s_stderr: float
    realizations: int

    def to_row(self) -> dict:
        return {
            "N": self.n_qubits,
            "w": self.width,
            "k": self.k,
            "j2_mean": self.j2_mean,
            "j2_stderr": self.j2_stderr,
            "j2_var": self.j2_var,
            "s_mean": self.s_mean,
            "s_stderr": self.s_stderr,
            "R": self.realizations,
        }
