from __future__ import annotations

from pathlib import Path

from ..ensemble.repository import CsvRunRepository
from ..ensemble.service import aggregate
from ..shared.logging import StructuredLogger
from .commands import AnalyzeConfig
from .domains import FitReport
from .fitting import fit_collapse
from .operations import find_crossings, points_from_runs, variance_peaks
from .repository import ScalingRepository
from .settings import ScalingSettings


class ScalingService:

    def __init__(
        self,
        settings: ScalingSettings,
        run_repository: CsvRunRepository,
        repository: ScalingRepository,
        logger: StructuredLogger,
    ):
        self.settings = settings
        self.run_repository = run_repository
        self.repository = repository
        self.log = logger

    def analyze(self, config: AnalyzeConfig, directory: Path) -> FitReport:
        runs = self.run_repository.load_runs(Path(config.runs))
        points = points_from_runs(runs, config.observable)
        self.log.info("analyze_input", runs=len(runs), points=len(points), observable=config.observable)

        fit = fit_collapse(
            points,
            config.search_box(),
            seed=config.seed,
            bootstrap=config.bootstrap,
            runs=runs,
            observable=config.observable,
            grid_size=config.grid_size,
            settings=self.settings,
            logger=self.log,
        )
        crossings = tuple(find_crossings(points, fit.zeta_over_nu))
        peaks = tuple(variance_peaks(aggregate(runs))) if config.observable == "j2" else ()
        if fit.zeta > 0:
            self.log.info("nu_zeta_ratio", nu=fit.nu, zeta=fit.zeta, ratio=fit.nu / fit.zeta)
        for peak in peaks:
            if not peak.interior:
                self.log.warning("variance_peak_at_edge", n_qubits=peak.n_qubits, width=peak.width)

        report = FitReport(observable=config.observable, fit=fit, crossings=crossings, variance_peaks=peaks)
        self.repository.save_fit(directory, report)
        self.repository.save_collapsed(directory, points, fit)
        return report
