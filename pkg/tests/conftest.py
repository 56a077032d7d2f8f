from pathlib import Path
from typing import Callable

import numpy as np
import pytest

from project.src.ensemble.commands import SweepConfig
from project.src.ensemble.container import EnsembleContainer
from project.src.ensemble.repository import CsvRunRepository
from project.src.ensemble.service import EnsembleService
from project.src.ensemble.settings import EnsembleSettings
from project.src.hilbert.domains import BlochAngles
from project.src.scaling.domains import ScalingPoint
from project.src.shared.logging import structured_logger


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(1234)


@pytest.fixture
def ensemble_settings() -> EnsembleSettings:
    return EnsembleSettings()


@pytest.fixture
def run_repository(ensemble_settings) -> CsvRunRepository:
    return CsvRunRepository(ensemble_settings)


@pytest.fixture(scope="session")
def ensemble_service() -> EnsembleService:
    container = EnsembleContainer(logger=structured_logger)
    return container.ensemble_service()


@pytest.fixture
def tiny_sweep_config(tmp_path: Path) -> SweepConfig:
    return SweepConfig(
        n_list=[4, 5],
        w_grid=[0.0, 0.5, 1.5],
        k=1.0,
        realizations=3,
        n_max=60,
        window=(20, 60),
        obs_stride=2,
        entropy_stride=10,
        master_seed=99,
        output=str(tmp_path / "sweep"),
    )


def scaling_form(
    sizes, widths, w_c: float, nu: float, zeta: float, shape: Callable[[np.ndarray], np.ndarray]
) -> dict[int, np.ndarray]:
    """y = N^{ζ/ν} F((w − w_c) N^{1/ν})"""
    widths = np.asarray(widths, dtype=np.float64)
    return {n: n ** (zeta / nu) * shape((widths - w_c) * n ** (1.0 / nu)) for n in sizes}


@pytest.fixture
def make_points() -> Callable[..., list[ScalingPoint]]:
    """합성 콜랩스 데이터. noise 는 상대 표준오차 (σ = noise·|y|)."""

    def build(
        sizes=(8, 12, 16),
        widths=None,
        w_c: float = 2.0,
        nu: float = 0.5,
        zeta: float = 0.6,
        shape: Callable[[np.ndarray], np.ndarray] = lambda x: 2.0 + np.tanh(x / 60.0),
        noise: float = 0.01,
        seed: int = 0,
        perturb: bool = True,
    ) -> list[ScalingPoint]:
        widths = np.linspace(1.6, 2.4, 41) if widths is None else np.asarray(widths)
        generator = np.random.default_rng(seed)
        points = []
        for n, ys in scaling_form(sizes, widths, w_c, nu, zeta, shape).items():
            sigmas = noise * np.abs(ys)
            observed = ys + generator.normal(0.0, sigmas) if perturb else ys
            points.extend(
                ScalingPoint(n_qubits=n, width=float(w), y=float(y), sigma=float(s))
                for w, y, s in zip(widths, observed, sigmas)
            )
        return points

    return build


@pytest.fixture
def generic_angles():
    return BlochAngles(2.25, 1.1)
