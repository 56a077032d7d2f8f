from __future__ import annotations

import math
from typing import Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

TheoryName = Literal[
    "rmt_j_squared",
    "pss_j_squared",
    "pss_entropy_avg",
    "page_entropy",
    "unkicked_j2",
    "heisenberg_times",
    "saturation_time",
    "lyapunov",
    "k_periodicity",
    "x_component_j2",
    "x_coherence",
    "baselines",
]


class TheoryQuery(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: TheoryName
    n_qubits: int = Field(12, ge=2)
    q: Optional[int] = Field(None, ge=1)
    k: float = Field(1.0, ge=0)
    width: float = Field(1.0, ge=0)
    theta: float = 2.25
    phi: float = 1.1
    t: list[float] = Field(default_factory=lambda: [0.0])


class ClassicalConfig(BaseModel):
    """고전 사상 위상 초상 설정. 격자는 θ ∈ (0, π), φ ∈ (−π, π] 의 내부 등간격."""
    model_config = ConfigDict(extra="forbid", frozen=True)

    k: float = Field(1.0, ge=0)
    theta_points: int = Field(9, ge=1)
    phi_points: int = Field(16, ge=1)
    steps: int = Field(500, ge=0)
    output: str = "runs/classical"

    def thetas(self) -> list[float]:
        return [float(v) for v in np.linspace(0.0, math.pi, self.theta_points + 2)[1:-1]]

    def phis(self) -> list[float]:
        return [float(v) for v in np.linspace(-math.pi, math.pi, self.phi_points + 1)[1:]]
