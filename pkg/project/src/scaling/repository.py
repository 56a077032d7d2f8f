from __future__ import annotations

import json
from pathlib import Path
from typing import Sequence

import pandas as pd

from ..ensemble.repository import FLOAT_FORMAT
from ..shared.exceptions import ConfigNotFoundException
from .domains import CollapseFit, FitReport, ScalingPoint
from .operations import inverse_rescale, rescale
from .settings import ScalingSettings

COLLAPSED_COLUMNS = ["N", "x_tilde", "y_tilde", "sigma_tilde"]


class ScalingRepository:
    """피팅 결과(JSON)와 콜랩스 곡선(CSV) 저장."""

    def __init__(self, settings: ScalingSettings):
        self.settings = settings

    def save_fit(self, directory: Path, report: FitReport) -> Path:
        path = directory / self.settings.FIT_FILENAME
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(report.to_json(), indent=2, sort_keys=True) + "\n", encoding="utf-8")
        return path

    def load_fit(self, path: Path) -> dict:
        if not path.exists():
            raise ConfigNotFoundException(str(path))
        return json.loads(path.read_text(encoding="utf-8"))

    def save_collapsed(self, directory: Path, points: Sequence[ScalingPoint], fit: CollapseFit) -> Path:
        rows = []
        for point in sorted(points, key=lambda p: (p.n_qubits, p.width)):
            x_tilde, y_tilde, sigma_tilde = rescale(point, fit.w_c, fit.nu, fit.zeta)
            rows.append({"N": point.n_qubits, "x_tilde": x_tilde, "y_tilde": y_tilde, "sigma_tilde": sigma_tilde})
        path = directory / self.settings.COLLAPSED_FILENAME
        path.parent.mkdir(parents=True, exist_ok=True)
        pd.DataFrame(rows, columns=COLLAPSED_COLUMNS).to_csv(
            path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n"
        )
        return path

    def load_collapsed(self, path: Path, fit: CollapseFit) -> list[ScalingPoint]:
        """콜랩스 CSV 를 원래 (w, y) 좌표로 되돌린다."""
        if not path.exists():
            raise ConfigNotFoundException(str(path))
        frame = pd.read_csv(path)
        points = []
        for row in frame.itertuples(index=False):
            n = int(row.N)
            width, y = inverse_rescale(n, float(row.x_tilde), float(row.y_tilde), fit.w_c, fit.nu, fit.zeta)
            _, sigma = inverse_rescale(n, 0.0, float(row.sigma_tilde), fit.w_c, fit.nu, fit.zeta)
            points.append(ScalingPoint(n, width, y, sigma))
        return points
