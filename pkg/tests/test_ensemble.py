import math

import numpy as np
import pytest
from pydantic import ValidationError

from project.src.dynamics.disorder import clean_disorder
from project.src.dynamics.domains import FloquetParams
from project.src.dynamics.evolution import evolve, windowed_record_schedule
from project.src.dynamics.phases import build_phase_table
from project.src.ensemble.averaging import downsample, time_average
from project.src.ensemble.commands import EvolveConfig, SweepConfig
from project.src.ensemble.domains import RunRecord
from project.src.ensemble.service import aggregate, average_trajectories, realization_seed
from project.src.hilbert.domains import BlochAngles
from project.src.hilbert.operations import coherent_state
from project.src.observables.domains import ObservableSample
from project.src.shared.exceptions import CapacityException, ConfigNotFoundException, ValidationException

pytestmark = pytest.mark.unit


def sample(n: int, j2: float, entropy=None) -> ObservableSample:
    return ObservableSample(n=n, jx2=j2 / 3, jy2=j2 / 3, jz2=j2 / 3, j2=j2, pss_weight=1.0, q_subsystem=4, entropy_q=entropy)


def run(n_qubits: int, width: float, realization: int, j2: float, entropy: float = 1.0) -> RunRecord:
    return RunRecord(
        n_qubits=n_qubits,
        width=width,
        k=1.0,
        theta=2.25,
        phi=1.1,
        realization=realization,
        seed=realization,
        j2_bar=j2,
        s_half_bar=entropy,
        pss_weight_bar=0.5,
    )


class TestRealizationSeed:

    def test_deterministic(self):
        assert realization_seed(1, 12, 3, 7) == realization_seed(1, 12, 3, 7)

    def test_distinct_across_indices(self):
        seeds = {realization_seed(1, n, w, r) for n in (10, 12) for w in range(3) for r in range(5)}
        assert len(seeds) == 30

    def test_fits_in_64_bits(self):
        assert 0 <= realization_seed(2 ** 62, 16, 10, 99) < 2 ** 64


class TestTimeAverage:

    def test_constant_samples(self):
        averages = time_average([sample(n, 5.0) for n in range(0, 100, 10)], 20, 80)
        assert averages.j2 == pytest.approx(5.0)
        assert averages.sample_count == 7
        assert math.isnan(averages.entropy)

    def test_linear_samples_give_midpoint(self):
        averages = time_average([sample(10, 2.0, 1.0), sample(20, 4.0, 3.0)], 10, 20)
        assert averages.j2 == pytest.approx(3.0)
        assert averages.entropy == pytest.approx(2.0)

    def test_uneven_spacing_is_trapezoidal(self):
        averages = time_average([sample(0, 0.0), sample(1, 0.0), sample(10, 10.0)], 0, 10)
        assert averages.j2 == pytest.approx(4.5)

    def test_empty_window_rejected(self):
        with pytest.raises(ValidationException):
            time_average([sample(0, 1.0), sample(100, 1.0)], 10, 90)

    def test_missing_entropy_rejected_when_required(self):
        samples = [sample(n, 5.0) for n in range(0, 100, 10)] + [sample(100, 5.0, 1.0)]
        assert math.isnan(time_average(samples, 20, 80).entropy)
        with pytest.raises(ValidationException):
            time_average(samples, 20, 80, require_entropy=True)

    def test_downsample_keeps_ends(self):
        kept = downsample([sample(n, 1.0) for n in range(1000)], 10)
        assert kept[0].n == 0 and kept[-1].n == 999
        assert len(kept) == 10


class TestAggregate:

    def test_statistics(self):
        runs = [run(8, 1.0, r, j2) for r, j2 in enumerate([1.0, 2.0, 3.0, 6.0])]
        (record,) = aggregate(runs)
        assert record.realizations == 4
        assert record.j2_mean == pytest.approx(3.0)
        assert record.j2_var == pytest.approx(np.var([1.0, 2.0, 3.0, 6.0]))
        assert record.j2_stderr == pytest.approx(np.std([1.0, 2.0, 3.0, 6.0], ddof=1) / 2.0)

    def test_non_finite_entropy_rejected(self):
        runs = [run(8, 1.0, 0, 2.0, 1.0), run(8, 1.0, 1, 2.0, math.nan), run(8, 1.0, 2, 2.0, 3.0)]
        with pytest.raises(ValidationException):
            aggregate(runs)

    def test_entropy_statistics_use_every_realization(self):
        (record,) = aggregate([run(8, 1.0, r, 2.0, s) for r, s in enumerate([1.0, 2.0, 3.0, 6.0])])
        assert record.s_mean == pytest.approx(3.0)
        assert record.s_stderr == pytest.approx(np.std([1.0, 2.0, 3.0, 6.0], ddof=1) / 2.0)

    def test_single_realization_has_zero_stderr(self):
        (record,) = aggregate([run(8, 1.0, 0, 4.0)])
        assert record.j2_stderr == 0.0

    def test_sorted_by_size_then_width(self):
        runs = [run(10, 2.0, 0, 1.0), run(8, 3.0, 0, 1.0), run(8, 1.0, 0, 1.0)]
        assert [(a.n_qubits, a.width) for a in aggregate(runs)] == [(8, 1.0), (8, 3.0), (10, 2.0)]

    def test_average_trajectories(self):
        averaged = average_trajectories([[sample(0, 2.0, 1.0)], [sample(0, 4.0, None)]])
        assert averaged[0].j2 == pytest.approx(3.0)
        assert averaged[0].entropy_q == pytest.approx(1.0)


class TestSweepConfig:

    def test_empty_grid_rejected(self):
        with pytest.raises(ValidationError):
            SweepConfig(n_list=[8], w_grid=[])

    def test_decreasing_grid_rejected(self):
        with pytest.raises(ValidationError):
            SweepConfig(n_list=[8], w_grid=[1.0, 0.5])

    def test_window_beyond_n_max_rejected(self):
        with pytest.raises(ValidationError):
            SweepConfig(n_list=[8], w_grid=[1.0], n_max=100, window=(50, 200))

    def test_unknown_key_rejected(self):
        with pytest.raises(ValidationError):
            SweepConfig.model_validate({"n_list": [8], "w_grid": [1.0], "n_kicks": 5})

    def test_size_out_of_range_rejected(self):
        with pytest.raises(ValidationError):
            SweepConfig(n_list=[30], w_grid=[1.0])

    def test_presets(self):
        desk = SweepConfig.preset("desk")
        full = SweepConfig.preset("full", realizations=4)
        assert max(desk.n_list) <= 14 and desk.window == (5_000, 20_000)
        assert full.n_list == [12, 14, 16] and full.realizations == 4

    def test_evolve_subsystem_must_fit(self):
        with pytest.raises(ValidationError):
            EvolveConfig(n_qubits=6, q=6)


@pytest.mark.integration
class TestEnsembleService:

    def test_clean_realization_conserves_total_spin(self, ensemble_service, tiny_sweep_config):
        record = ensemble_service.run_realization(tiny_sweep_config, 5, 0.0, 0)
        assert record.j2_bar == pytest.approx(5 * 7 / 4, abs=1e-9)
        assert record.pss_weight_bar == pytest.approx(1.0, abs=1e-10)

    def test_offset_window_still_averages_entropy(self, ensemble_service, tiny_sweep_config):
        config = tiny_sweep_config.model_copy(
            update={"n_list": [6], "w_grid": [5.0], "n_max": 400, "window": (101, 399), "obs_stride": 10, "entropy_stride": 100}
        )
        record = ensemble_service.run_realization(config, 6, 5.0, 0)
        assert math.isfinite(record.s_half_bar)
        assert 0.0 < record.s_half_bar <= 3.0

    def test_realization_is_reproducible(self, ensemble_service, tiny_sweep_config):
        first = ensemble_service.run_realization(tiny_sweep_config, 4, 1.5, 2)
        second = ensemble_service.run_realization(tiny_sweep_config, 4, 1.5, 2)
        assert first == second

    def test_sweep_writes_tables(self, ensemble_service, tiny_sweep_config, run_repository, tmp_path):
        aggregates = ensemble_service.sweep(tiny_sweep_config, tmp_path)
        runs = run_repository.load_runs(tmp_path / "runs.csv")
        assert len(runs) == 2 * 3 * 3
        assert [(a.n_qubits, a.width) for a in aggregates] == [(n, w) for n in (4, 5) for w in (0.0, 0.5, 1.5)]
        assert run_repository.load_aggregates(tmp_path / "aggregate.csv")[0].realizations == 3

    def test_thread_count_does_not_change_output(self, ensemble_service, tiny_sweep_config, tmp_path):
        ensemble_service.sweep(tiny_sweep_config, tmp_path / "one", workers=1)
        ensemble_service.sweep(tiny_sweep_config, tmp_path / "eight", workers=8)
        for name in ("runs.csv", "aggregate.csv"):
            assert (tmp_path / "one" / name).read_bytes() == (tmp_path / "eight" / name).read_bytes()

    def test_trajectories_saved_on_request(self, ensemble_service, tiny_sweep_config, run_repository, tmp_path):
        config = tiny_sweep_config.model_copy(update={"save_trajectories": True, "n_list": [4], "realizations": 1})
        ensemble_service.sweep(config, tmp_path)
        frame = run_repository.load_trajectory(tmp_path / "trajectories" / "N4_w0.5_r0.csv")
        assert list(frame.columns) == ["n", "jx2", "jy2", "jz2", "j2", "s_q", "pss_weight"]

    def test_capacity_guard(self, ensemble_service):
        with pytest.raises(CapacityException):
            ensemble_service.check_capacity(24, workers=10 ** 6)

    def test_missing_runs_file(self, run_repository, tmp_path):
        with pytest.raises(ConfigNotFoundException):
            run_repository.load_runs(tmp_path / "absent.csv")

    def test_averaged_trajectory(self, ensemble_service):
        config = EvolveConfig(n_qubits=5, width=1.0, n_kicks=30, realizations=3, entropy_stride=5)
        samples = ensemble_service.run_trajectory(config)
        assert samples[0].n == 0 and samples[-1].n == 30
        assert samples[0].j2 == pytest.approx(5 * 7 / 4)


def trapezoid_mean(frame, column: str, n1: int, n2: int) -> float:
    window = frame[(frame["n"] >= n1) & (frame["n"] <= n2)].dropna(subset=[column])
    x = window["n"].to_numpy(dtype=float)
    y = window[column].to_numpy(dtype=float)
    return float(np.sum(0.5 * (y[1:] + y[:-1]) * np.diff(x)) / (x[-1] - x[0]))


class TestCleanTrajectoryFixture:
    """무질서 없는 N=10 궤적: J² = 30, PSS 가중치 1 이 정확히 유지된다."""

    N_QUBITS = 10
    WINDOW = (101, 399)

    @pytest.fixture
    def clean_samples(self):
        params = FloquetParams(n_qubits=self.N_QUBITS, k=1.0)
        phases = build_phase_table(params, clean_disorder(self.N_QUBITS))
        initial = coherent_state(self.N_QUBITS, BlochAngles(2.25, 1.1))
        schedule = windowed_record_schedule(400, self.WINDOW, 10, 100)
        return evolve(initial, phases, params, 400, schedule)

    def test_window_average_is_exact(self, clean_samples):
        averages = time_average(clean_samples, *self.WINDOW, require_entropy=True)
        assert averages.j2 == pytest.approx(30.0, abs=1e-9)
        assert averages.pss_weight == pytest.approx(1.0, abs=1e-10)
        assert 0.0 < averages.entropy <= math.log2(6) + 1e-9

    def test_saved_trajectory_reproduces_average(self, clean_samples, run_repository, tmp_path):
        path = run_repository.save_trajectory(tmp_path / "trajectory.csv", clean_samples)
        frame = run_repository.load_trajectory(path)
        averages = time_average(clean_samples, *self.WINDOW, require_entropy=True)
        assert trapezoid_mean(frame, "j2", *self.WINDOW) == pytest.approx(averages.j2, abs=1e-12)
        assert trapezoid_mean(frame, "s_q", *self.WINDOW) == pytest.approx(averages.entropy, abs=1e-12)
