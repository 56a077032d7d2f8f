from __future__ import annotations

import math
from typing import Any

import numpy as np

from ..hilbert.domains import BlochAngles
from ..hilbert.operations import random_state
from ..observables.operations import j_squared, subsystem_entropy
from ..shared.exceptions import ValidationException
from . import operations as ops
from .domains import UnkickedParams
from .queries import TheoryQuery


class TheoryService:
    """이론 기준값을 JSON 직렬화 가능한 dict 로 돌려준다."""

    def baselines(self, n_qubits: int, q: int | None = None) -> dict[str, Any]:
        q = n_qubits // 2 if q is None else q
        t_pss, t_fhs = ops.heisenberg_times(n_qubits)
        return {
            "n_qubits": n_qubits,
            "q": q,
            "rmt_j_squared": ops.rmt_j_squared(n_qubits),
            "pss_j_squared": ops.pss_j_squared(n_qubits),
            "page_entropy": ops.page_entropy(n_qubits, q),
            "pss_entropy_avg": ops.pss_entropy_avg(n_qubits, q),
            "t_pss": t_pss,
            "t_fhs": t_fhs,
        }

    def evaluate(self, query: TheoryQuery) -> dict[str, Any]:
        n = query.n_qubits
        q = n // 2 if query.q is None else query.q
        if q >= n:
            raise ValidationException(f"q={q} must be < N={n}", details={"q": q, "n_qubits": n})
        angles = BlochAngles(query.theta, query.phi)
        result: dict[str, Any] = {"name": query.name, "n_qubits": n}

        if query.name == "rmt_j_squared":
            result["value"] = ops.rmt_j_squared(n)
        elif query.name == "pss_j_squared":
            result["value"] = ops.pss_j_squared(n)
        elif query.name == "pss_entropy_avg":
            result.update(q=q, value=ops.pss_entropy_avg(n, q))
        elif query.name == "page_entropy":
            result.update(q=q, value=ops.page_entropy(n, q))
        elif query.name == "unkicked_j2":
            params = UnkickedParams(n_qubits=n, k=query.k, width=query.width, angles=angles)
            values = ops.unkicked_j2(query.t, params)
            result.update(
                k=query.k,
                width=query.width,
                theta=query.theta,
                phi=query.phi,
                t=list(query.t),
                value=[float(v) for v in values] if not isinstance(values, float) else [values],
                limit=ops.unkicked_j2_limit(params),
                flagged=params.outside_derivation,
            )
        elif query.name == "heisenberg_times":
            t_pss, t_fhs = ops.heisenberg_times(n)
            result.update(t_pss=t_pss, t_fhs=t_fhs)
        elif query.name == "saturation_time":
            value = ops.saturation_time_estimate(n, query.k, query.width)
            result.update(k=query.k, width=query.width, value=None if math.isinf(value) else value, infinite=math.isinf(value))
        elif query.name == "lyapunov":
            estimate = ops.lyapunov_estimate(query.k)
            result.update(k=query.k, value=estimate.value, in_validity_regime=estimate.in_validity_regime)
        elif query.name == "k_periodicity":
            result["value"] = ops.k_periodicity(n)
        elif query.name == "x_component_j2":
            result.update(theta=query.theta, phi=query.phi, value=ops.x_component_j2(n, angles))
        elif query.name == "x_coherence":
            result.update(theta=query.theta, phi=query.phi, value=ops.coherent_x_coherence(n, angles))
        else:
            result.update(self.baselines(n, q))
        return result

    def random_state_check(self, n_qubits: int, q: int | None = None, samples: int = 20, seed: int = 0) -> dict[str, Any]:
        """Haar 유사 무작위 상태의 표본 평균을 RMT/Page 값과 나란히."""
        q = n_qubits // 2 if q is None else q
        rng = np.random.default_rng(seed)
        j2, entropy = [], []
        for _ in range(samples):
            state = random_state(n_qubits, rng)
            j2.append(j_squared(state))
            entropy.append(subsystem_entropy(state, q))
        return {
            "n_qubits": n_qubits,
            "q": q,
            "samples": samples,
            "j2_mean": float(np.mean(j2)),
            "rmt_j_squared": ops.rmt_j_squared(n_qubits),
            "entropy_mean": float(np.mean(entropy)),
            "page_entropy": ops.page_entropy(n_qubits, q),
        }
