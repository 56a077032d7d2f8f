import math

import numpy as np
import pytest

from project.src.dynamics.disorder import sample_disorder
from project.src.dynamics.domains import FloquetParams, RecordSchedule
from project.src.dynamics.evolution import evolve
from project.src.dynamics.phases import build_phase_table
from project.src.ensemble.service import realization_seed
from project.src.hilbert.domains import BlochAngles
from project.src.hilbert.operations import coherent_state
from project.src.shared.exceptions import ValidationException
from project.src.theory import operations as ops
from project.src.theory.container import TheoryContainer
from project.src.theory.domains import UnkickedParams
from project.src.theory.portrait import phase_portrait
from project.src.theory.queries import ClassicalConfig, TheoryQuery

pytestmark = pytest.mark.unit


class TestBaselines:

    @pytest.mark.parametrize("n_qubits, expected", [(12, 9.0), (4, 3.0), (16, 12.0)])
    def test_rmt_j_squared(self, n_qubits, expected):
        assert ops.rmt_j_squared(n_qubits) == expected

    def test_pss_j_squared(self):
        assert ops.pss_j_squared(12) == 42.0

    def test_pss_entropy(self):
        assert ops.pss_entropy_avg(12, 6) == pytest.approx(2.14069, abs=1e-5)
        assert ops.pss_entropy_avg(2, 1) == pytest.approx(1 / 3, abs=1e-12)

    def test_pss_entropy_large_n_limit(self):
        assert ops.pss_entropy_avg(10_000, 5_000) == pytest.approx(math.log2(5_001) - 2 / 3, abs=1e-3)

    @pytest.mark.parametrize("n_qubits, q, expected", [(12, 6, 5.27865), (16, 8, 7.27865)])
    def test_page_entropy(self, n_qubits, q, expected):
        assert ops.page_entropy(n_qubits, q) == pytest.approx(expected, abs=1e-5)

    def test_page_entropy_single_qubit(self):
        assert ops.page_entropy(20, 1) == pytest.approx(1.0, abs=1e-5)

    @pytest.mark.parametrize("n_qubits, expected", [(12, (13, 4096)), (2, (3, 4)), (16, (17, 65536))])
    def test_heisenberg_times(self, n_qubits, expected):
        assert ops.heisenberg_times(n_qubits) == expected

    def test_x_component(self):
        assert ops.x_component_j2(12, BlochAngles(math.pi / 2, 0.0)) == pytest.approx(36.0)

    @pytest.mark.parametrize("n_qubits", range(4, 22, 2))
    def test_half_system_entropies_below_their_ceilings(self, n_qubits):
        half = n_qubits // 2
        assert ops.page_entropy(n_qubits, half) < half
        assert ops.pss_entropy_avg(n_qubits, half) < math.log2(half + 1)


class TestTimescales:

    def test_saturation_time(self):
        assert ops.saturation_time_estimate(16, 1.0, 1.0) == pytest.approx(4.0)
        assert ops.saturation_time_estimate(12, 1.0, 2.0) == pytest.approx(math.sqrt(12) / 2)

    def test_saturation_time_without_disorder_is_infinite(self):
        assert math.isinf(ops.saturation_time_estimate(12, 1.0, 0.0))

    def test_lyapunov(self):
        assert ops.lyapunov_estimate(math.e).value == pytest.approx(0.0, abs=1e-15)
        assert ops.lyapunov_estimate(6.0).value == pytest.approx(0.7918, abs=1e-4)
        assert ops.lyapunov_estimate(8.0).in_validity_regime

    def test_lyapunov_flags_small_k(self):
        estimate = ops.lyapunov_estimate(1.0)
        assert estimate.value == pytest.approx(-1.0)
        assert not estimate.in_validity_regime

    def test_k_periodicity(self):
        assert ops.k_periodicity(3) == pytest.approx(12 * math.pi)


class TestUnkickedJ2:

    def test_initial_value(self, generic_angles):
        params = UnkickedParams(12, k=1.0, width=1.0, angles=generic_angles)
        assert ops.unkicked_j2(0.0, params) == pytest.approx(42.0)

    def test_x_eigenstate_does_not_decay(self):
        params = UnkickedParams(12, k=1.0, width=2.0, angles=BlochAngles(math.pi / 2, 0.0))
        assert np.allclose(ops.unkicked_j2([0.0, 1.0, 50.0, 1e4], params), 42.0)

    def test_y_plane_state_reaches_rmt(self):
        params = UnkickedParams(12, k=1.0, width=1.0, angles=BlochAngles(1.3, math.pi / 2))
        assert ops.unkicked_j2(1e4, params) == pytest.approx(9.0, abs=1e-9)

    def test_generic_limit(self, generic_angles):
        params = UnkickedParams(12, k=1.0, width=1.0, angles=generic_angles)
        assert ops.unkicked_j2_limit(params) == pytest.approx(13.11, abs=0.01)

    def test_two_qubits_flagged(self, generic_angles):
        params = UnkickedParams(2, k=1.0, width=1.0, angles=generic_angles)
        assert params.outside_derivation
        assert ops.unkicked_j2(5.0, params) == pytest.approx(2.0)

    def test_negative_time_rejected(self, generic_angles):
        with pytest.raises(ValidationException):
            ops.unkicked_j2(-1.0, UnkickedParams(4, k=1.0, width=1.0, angles=generic_angles))

    @pytest.mark.parametrize("angles", [BlochAngles(2.25, 1.1), BlochAngles(math.pi / 2, 1.9), BlochAngles(0.4, -0.56)])
    @pytest.mark.parametrize("width", [0.3, 1.0, 5.0])
    def test_non_increasing_in_time(self, angles, width):
        values = ops.unkicked_j2(np.linspace(0.0, 200.0, 2001), UnkickedParams(12, k=1.0, width=width, angles=angles))
        assert np.all(np.diff(values) <= 1e-12)


@pytest.mark.integration
class TestUnkickedMonteCarlo:
    """p = 0 무질서 평균 전개 ↔ 해석해."""

    def test_disorder_average_matches_formula(self, generic_angles):
        n, k, width, realizations = 8, 1.0, 1.0, 200
        times = (1, 2, 5, 10, 20, 50)
        params = FloquetParams(n, k=k, p=0.0)
        initial = coherent_state(n, generic_angles)
        schedule = RecordSchedule(times)
        values = np.empty((realizations, len(times)))
        for r in range(realizations):
            disorder = sample_disorder(n, width, realization_seed(2024, n, 0, r))
            samples = evolve(initial, build_phase_table(params, disorder), params, times[-1], schedule)
            values[r] = [s.j2 for s in samples]

        mean = values.mean(axis=0)
        stderr = values.std(axis=0, ddof=1) / math.sqrt(realizations)
        expected = ops.unkicked_j2(list(times), UnkickedParams(n, k=k, width=width, angles=generic_angles))
        assert np.all(np.abs(mean - expected) <= 3 * stderr + 1e-12)


class TestInitialStates:

    def test_named_states(self):
        assert set(ops.NAMED_INITIAL_STATES) == {"generic", "x_eigenstate", "y_eigenstate", "near_y", "near_x"}
        assert ops.NAMED_INITIAL_STATES["generic"].angles.as_tuple() == (2.25, 1.1)

    def test_angles_to_sphere(self):
        assert ops.angles_to_sphere(BlochAngles(math.pi / 2, math.pi / 2)) == pytest.approx((0.0, 1.0, 0.0), abs=1e-15)

    def test_coherence_extremes(self):
        assert ops.coherent_x_coherence(4, BlochAngles(math.pi / 2, 0.0)) == pytest.approx(0.0, abs=1e-12)
        assert ops.coherent_x_coherence(4, BlochAngles(math.pi / 2, math.pi / 2)) == pytest.approx(15.0)


class TestPhasePortrait:

    def test_fixed_point_orbit(self):
        points = list(phase_portrait(1.0, [math.pi / 2], [math.pi / 2], steps=3))
        assert [p.step for p in points] == [0, 1, 2, 3]
        for point in points:
            assert (point.x, point.y, point.z) == pytest.approx((0.0, 1.0, 0.0), abs=1e-12)

    def test_config_grid_is_interior(self):
        config = ClassicalConfig(theta_points=3, phi_points=4)
        assert all(0 < t < math.pi for t in config.thetas())
        assert all(-math.pi < p <= math.pi for p in config.phis())
        assert len(config.thetas()) == 3 and len(config.phis()) == 4


class TestTheoryService:

    @pytest.fixture
    def service(self):
        return TheoryContainer().theory_service()

    def test_baselines(self, service):
        result = service.evaluate(TheoryQuery(name="baselines", n_qubits=12))
        assert result["rmt_j_squared"] == 9.0
        assert result["page_entropy"] == pytest.approx(5.27865, abs=1e-5)
        assert (result["t_pss"], result["t_fhs"]) == (13, 4096)

    def test_unkicked_query(self, service):
        result = service.evaluate(TheoryQuery(name="unkicked_j2", n_qubits=12, t=[0.0, 1e6]))
        assert result["value"][0] == pytest.approx(42.0)
        assert result["value"][1] == pytest.approx(result["limit"])
        assert result["flagged"] is False

    def test_saturation_sentinel(self, service):
        result = service.evaluate(TheoryQuery(name="saturation_time", width=0.0))
        assert result["infinite"] is True
        assert result["value"] is None

    def test_subsystem_too_large(self, service):
        with pytest.raises(ValidationException):
            service.evaluate(TheoryQuery(name="page_entropy", n_qubits=6, q=6))

    def test_random_state_check(self, service):
        result = service.random_state_check(10, samples=10, seed=3)
        assert result["j2_mean"] == pytest.approx(result["rmt_j_squared"], rel=0.2)
        assert result["entropy_mean"] == pytest.approx(result["page_entropy"], abs=0.15)
