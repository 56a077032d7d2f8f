from pydantic_settings import BaseSettings, SettingsConfigDict


class HilbertSettings(BaseSettings):
    """Hilbert 도메인 설정"""
    model_config = SettingsConfigDict(env_file=".env", env_file_encoding="utf-8", extra="ignore")

    # 큐비트 수 범위
    MIN_QUBITS: int = 2
    MAX_QUBITS: int = 24

    # 수치 허용오차
    NORM_TOLERANCE: float = 1e-10
    UNITARY_TOLERANCE: float = 1e-12


hilbert_settings = HilbertSettings()
