from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .domains import SearchBox
from .settings import scaling_settings


class AnalyzeConfig(BaseModel):
    """runs.csv 에서 유한크기 스케일링 피팅 설정."""
    model_config = ConfigDict(extra="forbid", frozen=True)

    runs: str
    observable: Literal["j2", "entropy", "pss_weight"] = "j2"
    w_c: tuple[float, float] = scaling_settings.DEFAULT_W_C
    nu: tuple[float, float] = scaling_settings.DEFAULT_NU
    zeta: tuple[float, float] = scaling_settings.DEFAULT_ZETA
    grid_size: int = Field(scaling_settings.GRID_SIZE, ge=2)
    bootstrap: int = Field(scaling_settings.BOOTSTRAP_SAMPLES, ge=0)
    seed: int = Field(0, ge=0)
    output: str = "runs/analyze"

    @model_validator(mode="after")
    def _valid_box(self) -> "AnalyzeConfig":
        self.search_box()
        return self

    def search_box(self) -> SearchBox:
        return SearchBox(w_c=self.w_c, nu=self.nu, zeta=self.zeta)
