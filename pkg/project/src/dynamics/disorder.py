import numpy as np

from ..shared.exceptions import ValidationException
from .domains import DisorderRealization

_SEED_MASK = (1 << 64) - 1


def disorder_generator(seed: int) -> np.random.Generator:
    """seed 를 키로 하는 카운터 기반(Philox) 생성기. 스레드 스케줄과 무관하게 재현된다."""
    if seed < 0 or seed > _SEED_MASK:
        raise ValidationException(f"seed must be a 64-bit unsigned integer, got {seed}")
    return np.random.Generator(np.random.Philox(key=seed))


def sample_disorder(n_qubits: int, width: float, seed: int) -> DisorderRealization:
    """ε_{ℓℓ'} ~ Normal(0, w²) i.i.d., 쌍 순서는 np.triu_indices(N, 1)."""
    if width < 0:
        raise ValidationException(f"disorder width must be >= 0, got {width}", details={"width": width})
    pairs = n_qubits * (n_qubits - 1) // 2
    if width == 0:
        couplings = np.zeros(pairs, dtype=np.float64)
    else:
        couplings = width * disorder_generator(seed).standard_normal(pairs)
    return DisorderRealization(n_qubits=n_qubits, width=float(width), seed=seed, couplings=couplings)


def clean_disorder(n_qubits: int) -> DisorderRealization:
    return sample_disorder(n_qubits, 0.0, 0)
