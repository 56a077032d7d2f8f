from __future__ import annotations

from pathlib import Path
from typing import Iterable, Sequence

import pandas as pd

from ..observables.domains import TRAJECTORY_COLUMNS, ObservableSample
from ..shared.exceptions import ConfigNotFoundException, ValidationException
from .domains import AGGREGATE_COLUMNS, RUN_COLUMNS, AggregateRecord, RunRecord
from .settings import EnsembleSettings

# 재현성: 같은 값은 항상 같은 바이트로 기록
FLOAT_FORMAT = "%.17g"


class CsvRunRepository:
    """스윕 결과를 CSV 로 저장/조회. 디렉터리 하나가 한 번의 스윕."""

    def __init__(self, settings: EnsembleSettings):
        self.settings = settings

    # ---- 쓰기 ------------------------------------------------------------------
    def _write(self, rows: Iterable[dict], columns: list[str], path: Path) -> Path:
        path.parent.mkdir(parents=True, exist_ok=True)
        frame = pd.DataFrame(list(rows), columns=columns)
        frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
        return path

    def save_runs(self, directory: Path, runs: Sequence[RunRecord]) -> Path:
        return self._write((r.to_row() for r in runs), RUN_COLUMNS, directory / self.settings.RUNS_FILENAME)

    def save_aggregates(self, directory: Path, aggregates: Sequence[AggregateRecord]) -> Path:
        return self._write(
            (a.to_row() for a in aggregates), AGGREGATE_COLUMNS, directory / self.settings.AGGREGATE_FILENAME
        )

    def save_trajectory(self, path: Path, samples: Sequence[ObservableSample]) -> Path:
        return self._write((s.to_row() for s in samples), TRAJECTORY_COLUMNS, path)

    def trajectory_path(self, directory: Path, run: RunRecord) -> Path:
        name = f"N{run.n_qubits}_w{run.width:g}_r{run.realization}.csv"
        return directory / self.settings.TRAJECTORY_DIRNAME / name

    # ---- 읽기 ------------------------------------------------------------------
    @staticmethod
    def _read(path: Path, columns: list[str]) -> pd.DataFrame:
        if not path.exists():
            raise ConfigNotFoundException(str(path))
        frame = pd.read_csv(path)
        missing = [c for c in columns if c not in frame.columns]
        if missing:
            raise ValidationException(f"{path.name} is missing columns", details={"missing": missing})
        return frame

    def load_runs(self, path: Path) -> list[RunRecord]:
        frame = self._read(path, RUN_COLUMNS)
        return [
            RunRecord(
                n_qubits=int(row.N),
                width=float(row.w),
                k=float(row.k),
                theta=float(row.theta),
                phi=float(row.phi),
                realization=int(row.realization),
                seed=int(row.seed),
                j2_bar=float(row.j2_bar),
                s_half_bar=float(row.s_half_bar),
                pss_weight_bar=float(row.pss_weight_bar),
            )
            for row in frame.itertuples(index=False)
        ]

    def load_aggregates(self, path: Path) -> list[AggregateRecord]:
        frame = self._read(path, AGGREGATE_COLUMNS)
        return [
            AggregateRecord(
                n_qubits=int(row.N),
                width=float(row.w),
                k=float(row.k),
                j2_mean=float(row.j2_mean),
                j2_stderr=float(row.j2_stderr),
                j2_var=float(row.j2_var),
                s_mean=float(row.s_mean),
                s_stderr=float(row.s_stderr),
                realizations=int(row.R),
            )
            for row in frame.itertuples(index=False)
        ]

    def load_trajectory(self, path: Path) -> pd.DataFrame:
        return self._read(path, TRAJECTORY_COLUMNS)
