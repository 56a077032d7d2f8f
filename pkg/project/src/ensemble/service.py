from __future__ import annotations

import contextvars
import math
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Optional, Sequence

import numpy as np
import psutil

from ..dynamics.disorder import sample_disorder
from ..dynamics.domains import FloquetParams
from ..dynamics.evolution import default_record_schedule, evolve, windowed_record_schedule
from ..dynamics.phases import build_phase_table
from ..hilbert.domains import BlochAngles
from ..hilbert.operations import coherent_state
from ..observables.domains import ObservableSample
from ..shared.exceptions import BaseAppException, CapacityException, ComputationException, ValidationException
from ..shared.logging import StructuredLogger
from .averaging import downsample, time_average
from .commands import EvolveConfig, SweepConfig
from .domains import AggregateRecord, RunRecord
from .repository import CsvRunRepository
from .settings import EnsembleSettings

_BYTES_PER_AMPLITUDE = 16


def realization_seed(master_seed: int, n_qubits: int, w_index: int, realization: int) -> int:
    """(master, N, w 인덱스, realization) 로부터 64비트 시드. 격자 점을 추가해도 기존 시드는 그대로."""
    sequence = np.random.SeedSequence(entropy=master_seed, spawn_key=(n_qubits, w_index, realization))
    return int(sequence.generate_state(1, dtype=np.uint64)[0])


def aggregate(runs: Sequence[RunRecord]) -> list[AggregateRecord]:
    """(N, w) 별 realization 통계. 정렬은 N, w 순, 내부 합산은 realization 인덱스 순."""
    groups: dict[tuple[int, float], list[RunRecord]] = {}
    for run in runs:
        groups.setdefault((run.n_qubits, run.width), []).append(run)

    records = []
    for (n_qubits, width), members in sorted(groups.items()):
        members.sort(key=lambda r: r.realization)
        j2 = np.array([r.j2_bar for r in members], dtype=np.float64)
        entropy = np.array([r.s_half_bar for r in members], dtype=np.float64)
        count = len(members)
        if not np.isfinite(entropy).all():
            # 불완전한 앙상블은 거부
            raise ValidationException(
                "non-finite entropy average in ensemble",
                details={"n_qubits": n_qubits, "width": width, "missing": int((~np.isfinite(entropy)).sum())},
            )
        records.append(
            AggregateRecord(
                n_qubits=n_qubits,
                width=width,
                k=members[0].k,
                j2_mean=float(j2.mean()),
                j2_stderr=float(j2.std(ddof=1) / math.sqrt(count)) if count > 1 else 0.0,
                j2_var=float(j2.var(ddof=0)),
                s_mean=float(entropy.mean()),
                s_stderr=float(entropy.std(ddof=1) / math.sqrt(count)) if count > 1 else 0.0,
                realizations=count,
            )
        )
    return records


class EnsembleService:

    def __init__(self, settings: EnsembleSettings, repository: CsvRunRepository, logger: StructuredLogger):
        self.settings = settings
        self.repository = repository
        self.log = logger

    # ---------------------------------------------------------------------
    # 용량 점검
    # ---------------------------------------------------------------------

    def check_capacity(self, n_qubits: int, workers: int = 1) -> None:
        needed = workers * self.settings.BUFFERS_PER_WORKER * _BYTES_PER_AMPLITUDE * (1 << n_qubits)
        available = psutil.virtual_memory().available * self.settings.MEMORY_HEADROOM
        if needed > available:
            raise CapacityException(
                f"state vectors for N={n_qubits} on {workers} worker(s) need {needed} bytes",
                details={"n_qubits": n_qubits, "workers": workers, "needed": needed, "available": int(available)},
            )

    # ---------------------------------------------------------------------
    # 단일 realization
    # ---------------------------------------------------------------------

    def run_realization(
        self,
        config: SweepConfig,
        n_qubits: int,
        width: float,
        realization_index: int,
        w_index: Optional[int] = None,
    ) -> RunRecord:
        w_index = config.w_grid.index(width) if w_index is None else w_index
        seed = realization_seed(config.master_seed, n_qubits, w_index, realization_index)
        started = time.perf_counter()

        params = FloquetParams(n_qubits=n_qubits, k=config.k, p=config.p)
        disorder = sample_disorder(n_qubits, width, seed)
        phases = build_phase_table(params, disorder)
        initial = coherent_state(n_qubits, BlochAngles(config.theta, config.phi))
        schedule = windowed_record_schedule(config.n_max, config.window, config.obs_stride, config.entropy_stride)
        samples = evolve(initial, phases, params, config.n_max, schedule)
        averages = time_average(samples, *config.window, require_entropy=True)

        record = RunRecord(
            n_qubits=n_qubits,
            width=width,
            k=config.k,
            theta=config.theta,
            phi=config.phi,
            realization=realization_index,
            seed=seed,
            j2_bar=averages.j2,
            s_half_bar=averages.entropy,
            pss_weight_bar=averages.pss_weight,
            trace=downsample(samples, self.settings.TRACE_POINTS),
        )
        self.log.debug(
            "realization",
            n_qubits=n_qubits,
            width=width,
            realization=realization_index,
            seed=seed,
            j2_bar=record.j2_bar,
            elapsed_ms=round((time.perf_counter() - started) * 1000.0, 2),
        )
        return record

    def _guarded(self, config: SweepConfig, n_qubits: int, width: float, index: int, w_index: int) -> RunRecord:
        try:
            return self.run_realization(config, n_qubits, width, index, w_index)
        except BaseAppException:
            raise
        except Exception as exc:
            raise ComputationException(
                f"realization failed: {exc}",
                details={"n_qubits": n_qubits, "width": width, "realization": index},
            ) from exc

    # ---------------------------------------------------------------------
    # 스윕
    # ---------------------------------------------------------------------

    def run_all(self, config: SweepConfig, workers: int = 1) -> list[RunRecord]:
        """모든 (N, w, r) realization. 결과 순서는 워커 수와 무관하게 (N, w, r) 순."""
        for n_qubits in config.n_list:
            self.check_capacity(n_qubits, workers)
        tasks = [
            (n_qubits, width, r, w_index)
            for n_qubits in config.n_list
            for w_index, width in enumerate(config.w_grid)
            for r in range(config.realizations)
        ]
        self.log.info("sweep_progress", stage="start", tasks=len(tasks), workers=workers)

        if workers <= 1:
            runs = [self._guarded(config, *task) for task in tasks]
        else:
            with ThreadPoolExecutor(max_workers=workers) as executor:
                futures = [
                    executor.submit(contextvars.copy_context().run, self._guarded, config, *task)
                    for task in tasks
                ]
                runs = []
                try:
                    for future in futures:
                        runs.append(future.result())
                except BaseException:
                    # 하나라도 실패하면 스윕 전체 중단
                    for future in futures:
                        future.cancel()
                    raise
        self.log.info("sweep_progress", stage="done", tasks=len(tasks))
        return runs

    def sweep(self, config: SweepConfig, directory: Path, workers: int = 1) -> list[AggregateRecord]:
        runs = self.run_all(config, workers)
        aggregates = aggregate(runs)
        self.repository.save_runs(directory, runs)
        self.repository.save_aggregates(directory, aggregates)
        if config.save_trajectories:
            for run in runs:
                self.repository.save_trajectory(self.repository.trajectory_path(directory, run), run.trace)
        return aggregates

    # ---------------------------------------------------------------------
    # 단일 궤적 (evolve 명령)
    # ---------------------------------------------------------------------

    def run_trajectory(self, config: EvolveConfig) -> list[ObservableSample]:
        """R = 1 이면 한 궤적, R > 1 이면 같은 스케줄의 무질서 평균 궤적."""
        self.check_capacity(config.n_qubits)
        params = FloquetParams(n_qubits=config.n_qubits, k=config.k, p=config.p)
        initial = coherent_state(config.n_qubits, BlochAngles(config.theta, config.phi))
        schedule = default_record_schedule(config.n_kicks, config.obs_stride, config.entropy_stride)

        trajectories = []
        for r in range(config.realizations):
            seed = realization_seed(config.seed, config.n_qubits, 0, r)
            disorder = sample_disorder(config.n_qubits, config.width, seed)
            phases = build_phase_table(params, disorder)
            trajectories.append(evolve(initial, phases, params, config.n_kicks, schedule, q=config.q))
        if len(trajectories) == 1:
            return trajectories[0]
        return average_trajectories(trajectories)


def average_trajectories(trajectories: Sequence[Sequence[ObservableSample]]) -> list[ObservableSample]:
    """같은 스케줄로 기록된 궤적들의 점별 평균."""
    averaged = []
    for column in zip(*trajectories):
        entropies = [s.entropy_q for s in column if s.entropy_q is not None]
        averaged.append(
            ObservableSample(
                n=column[0].n,
                jx2=float(np.mean([s.jx2 for s in column])),
                jy2=float(np.mean([s.jy2 for s in column])),
                jz2=float(np.mean([s.jz2 for s in column])),
                j2=float(np.mean([s.j2 for s in column])),
                pss_weight=float(np.mean([s.pss_weight for s in column])),
                q_subsystem=column[0].q_subsystem,
                entropy_q=float(np.mean(entropies)) if entropies else None,
                n_qubits=column[0].n_qubits,
            )
        )
    return averaged
