from __future__ import annotations

import math
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ..hilbert.settings import hilbert_settings
from .settings import ensemble_settings

PresetName = Literal["desk", "full"]


def _check_angles(theta: float, phi: float) -> None:
    if not 0.0 <= theta <= math.pi:
        raise ValueError(f"theta must be in [0, pi], got {theta}")
    if not -math.pi < phi <= math.pi:
        raise ValueError(f"phi must be in (-pi, pi], got {phi}")


def _check_n(n: int) -> int:
    if not hilbert_settings.MIN_QUBITS <= n <= hilbert_settings.MAX_QUBITS:
        raise ValueError(
            f"N={n} outside supported range [{hilbert_settings.MIN_QUBITS}, {hilbert_settings.MAX_QUBITS}]"
        )
    return n


class SweepConfig(BaseModel):
    """무질서 앙상블 스윕 설정. JSON 설정 파일의 스키마 (알 수 없는 키는 거부)."""
    model_config = ConfigDict(extra="forbid", frozen=True)

    n_list: list[int] = Field(min_length=1)
    w_grid: list[float] = Field(min_length=1)
    k: float = Field(1.0, ge=0)
    p: float = math.pi / 2
    theta: float = 2.25
    phi: float = 1.1
    realizations: int = Field(ensemble_settings.DEFAULT_REALIZATIONS, ge=1)
    n_max: int = Field(ensemble_settings.DEFAULT_N_MAX, ge=1)
    window: tuple[int, int] = (ensemble_settings.DEFAULT_WINDOW_START, ensemble_settings.DEFAULT_WINDOW_END)
    obs_stride: int = Field(ensemble_settings.DEFAULT_OBS_STRIDE, ge=1)
    entropy_stride: int = Field(ensemble_settings.DEFAULT_ENTROPY_STRIDE, ge=1)
    master_seed: int = Field(ensemble_settings.DEFAULT_MASTER_SEED, ge=0, lt=2 ** 63)
    output: str = "runs/sweep"
    save_trajectories: bool = False

    @field_validator("n_list")
    @classmethod
    def _valid_sizes(cls, values: list[int]) -> list[int]:
        if len(set(values)) != len(values):
            raise ValueError("n_list contains duplicates")
        return [_check_n(n) for n in values]

    @field_validator("w_grid")
    @classmethod
    def _valid_widths(cls, values: list[float]) -> list[float]:
        if any(w < 0 for w in values):
            raise ValueError("disorder widths must be >= 0")
        if any(b <= a for a, b in zip(values, values[1:])):
            raise ValueError("w_grid must be strictly increasing")
        return values

    @model_validator(mode="after")
    def _cross_fields(self) -> "SweepConfig":
        n1, n2 = self.window
        if not 0 <= n1 < n2 <= self.n_max:
            raise ValueError(f"window must satisfy 0 <= n1 < n2 <= n_max, got {list(self.window)} with n_max={self.n_max}")
        _check_angles(self.theta, self.phi)
        return self

    @classmethod
    def preset(cls, name: PresetName, **overrides) -> "SweepConfig":
        """desk: 데스크 규모, full: 전체 규모 (n=10⁵..3×10⁵, R=100, N=12..16)."""
        if name == "desk":
            base = dict(
                n_list=[8, 10, 12, 14],
                w_grid=[0.1, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 4.0, 5.0],
                realizations=ensemble_settings.DEFAULT_REALIZATIONS,
                n_max=ensemble_settings.DEFAULT_N_MAX,
                window=(ensemble_settings.DEFAULT_WINDOW_START, ensemble_settings.DEFAULT_WINDOW_END),
            )
        elif name == "full":
            base = dict(
                n_list=[12, 14, 16],
                w_grid=[0.5, 1.0, 1.5, 1.8, 2.0, 2.2, 2.4, 2.6, 3.0, 4.0, 5.0],
                realizations=100,
                n_max=300_000,
                window=(100_000, 300_000),
                obs_stride=100,
                entropy_stride=1_000,
            )
        else:
            raise ValueError(f"unknown preset {name!r}")
        base.update(overrides)
        return cls(**base)


class EvolveConfig(BaseModel):
    """단일 궤적(또는 R 개 무질서 평균 궤적) 설정."""
    model_config = ConfigDict(extra="forbid", frozen=True)

    n_qubits: int = 12
    k: float = Field(1.0, ge=0)
    p: float = math.pi / 2
    width: float = Field(0.0, ge=0)
    theta: float = 2.25
    phi: float = 1.1
    seed: int = Field(ensemble_settings.DEFAULT_MASTER_SEED, ge=0, lt=2 ** 63)
    n_kicks: int = Field(1_000, ge=0)
    obs_stride: int = Field(1, ge=1)
    entropy_stride: int = Field(10, ge=1)
    q: Optional[int] = Field(None, ge=1)
    realizations: int = Field(1, ge=1)
    output: str = "runs/evolve"

    @field_validator("n_qubits")
    @classmethod
    def _valid_size(cls, n: int) -> int:
        return _check_n(n)

    @model_validator(mode="after")
    def _cross_fields(self) -> "EvolveConfig":
        _check_angles(self.theta, self.phi)
        if self.q is not None and self.q >= self.n_qubits:
            raise ValueError(f"q={self.q} must be < n_qubits={self.n_qubits}")
        return self
