import statistics
import time

import numpy as np
import pytest

from project.src.dynamics.disorder import sample_disorder
from project.src.dynamics.domains import FloquetParams
from project.src.dynamics.evolution import FloquetPropagator
from project.src.dynamics.phases import build_phase_table
from project.src.ensemble.commands import SweepConfig
from project.src.ensemble.service import aggregate
from project.src.hilbert.operations import coherent_state
from project.src.scaling.domains import SearchBox
from project.src.scaling.fitting import fit_collapse
from project.src.scaling.operations import (
    find_crossings,
    fit_entropy_slope,
    fit_power_law,
    fit_pss_entropy,
    locate_variance_peak,
    points_from_runs,
)
from project.src.theory.operations import page_entropy

pytestmark = pytest.mark.slow


def sweep_config(tmp_path, n_list, w_grid, realizations, k=1.0):
    return SweepConfig(
        n_list=n_list,
        w_grid=w_grid,
        k=k,
        realizations=realizations,
        n_max=20_000,
        window=(5_000, 20_000),
        obs_stride=50,
        entropy_stride=20,
        master_seed=2024,
        output=str(tmp_path / "sweep"),
    )


def by_width(aggregates, n_qubits):
    return {a.width: a for a in aggregates if a.n_qubits == n_qubits}


class TestRandomMatrixLimit:

    def test_strong_disorder_saturates_to_rmt_and_page(self, ensemble_service, tmp_path):
        runs = ensemble_service.run_all(sweep_config(tmp_path, [12], [5.0], 50), workers=4)
        (record,) = aggregate(runs)
        assert record.j2_mean == pytest.approx(9.0, rel=0.15)
        assert record.s_mean == pytest.approx(page_entropy(12, 6), rel=0.05)


class TestEndpoints:

    @pytest.fixture(scope="class")
    def aggregates(self, ensemble_service, tmp_path_factory):
        tmp_path = tmp_path_factory.mktemp("endpoints")
        runs = ensemble_service.run_all(sweep_config(tmp_path, [8, 10, 12, 14], [0.1, 5.0], 20), workers=4)
        return aggregate(runs)

    def test_weak_disorder_grows_quadratically(self, aggregates):
        ns = [8, 10, 12, 14]
        j2 = [by_width(aggregates, n)[0.1].j2_mean for n in ns]
        assert fit_power_law(ns, j2).slope == pytest.approx(2.0, abs=0.15)

    def test_strong_disorder_is_linear(self, aggregates):
        for n in (8, 10, 12, 14):
            assert by_width(aggregates, n)[5.0].j2_mean / n == pytest.approx(0.75, abs=0.12)

    def test_strong_disorder_entropy_is_volume_law(self, aggregates):
        ns = [8, 10, 12, 14]
        strong = fit_entropy_slope(ns, [by_width(aggregates, n)[5.0].s_mean for n in ns])
        weak = fit_entropy_slope(ns, [by_width(aggregates, n)[0.1].s_mean for n in ns])
        assert strong.slope == pytest.approx(0.5, abs=0.1)
        assert weak.slope < strong.slope

    def test_weak_disorder_entropy_follows_symmetric_sector(self, aggregates):
        ns = [8, 10, 12, 14]
        fit = fit_pss_entropy(ns, [by_width(aggregates, n)[0.1].s_mean for n in ns])
        assert fit.slope == pytest.approx(0.5, abs=0.15)
        assert fit.rms_residual < 0.1


class TestDisorderDependence:

    def test_mean_j2_does_not_grow_with_width(self, ensemble_service, tmp_path):
        widths = [0.1, 1.0, 2.0, 3.0, 5.0]
        runs = ensemble_service.run_all(sweep_config(tmp_path, [8], widths, 20), workers=4)
        records = sorted(aggregate(runs), key=lambda a: a.width)
        assert [a.width for a in records] == widths
        for low, high in zip(records, records[1:]):
            allowance = 2.0 * np.hypot(low.j2_stderr, high.j2_stderr)
            assert high.j2_mean <= low.j2_mean + allowance


class TestTransition:

    @pytest.fixture(scope="class")
    def runs(self, ensemble_service, tmp_path_factory):
        tmp_path = tmp_path_factory.mktemp("transition")
        widths = [float(w) for w in np.round(np.arange(1.0, 3.01, 0.2), 2)]
        return ensemble_service.run_all(sweep_config(tmp_path, [10, 12, 14], widths, 50), workers=4)

    def test_collapse_and_crossings(self, runs):
        points = points_from_runs(runs, "j2")
        fit = fit_collapse(points, SearchBox((1.0, 3.5), (0.2, 1.2), (0.0, 1.5)), bootstrap=0)
        assert 1.8 <= fit.w_c <= 2.4
        assert 0.3 <= fit.nu <= 0.8
        crossings = find_crossings(points, fit.zeta_over_nu)
        assert crossings
        assert all(1.6 <= c.w_cross <= 2.6 for c in crossings)

    def test_variance_peak_sharpens(self, runs):
        aggregates = aggregate(runs)
        peak = locate_variance_peak(aggregates, 12)
        assert peak.interior
        assert 1.5 <= peak.width <= 2.5
        assert locate_variance_peak(aggregates, 14).value > locate_variance_peak(aggregates, 10).value


class TestTransitionWeakKick:

    def test_critical_width_moves_up(self, ensemble_service, tmp_path):
        widths = [float(w) for w in np.round(np.arange(2.2, 4.21, 0.2), 2)]
        runs = ensemble_service.run_all(sweep_config(tmp_path, [10, 12, 14], widths, 50, k=0.5), workers=4)
        fit = fit_collapse(points_from_runs(runs, "j2"), SearchBox((2.2, 4.2), (0.2, 1.2), (0.0, 1.5)), bootstrap=0)
        assert 2.8 <= fit.w_c <= 3.5


class TestStepTiming:

    def test_sixteen_qubit_step(self, generic_angles):
        params = FloquetParams(n_qubits=16, k=1.0)
        propagator = FloquetPropagator(params, build_phase_table(params, sample_disorder(16, 1.0, seed=5)))
        buffer = coherent_state(16, generic_angles).copy_amplitudes()
        propagator.advance(buffer, 1)
        timings = []
        for _ in range(21):
            start = time.perf_counter()
            propagator.advance(buffer, 1)
            timings.append(time.perf_counter() - start)
        assert statistics.median(timings) <= 0.05
