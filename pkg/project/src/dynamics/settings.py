import math

from pydantic_settings import BaseSettings, SettingsConfigDict


class DynamicsSettings(BaseSettings):
    """Dynamics 도메인 설정"""
    model_config = SettingsConfigDict(env_file=".env", env_file_encoding="utf-8", extra="ignore")

    # 킥 회전각 기본값
    DEFAULT_KICK_ANGLE: float = math.pi / 2

    # 기록 스케줄: n ≤ DENSE_RECORD_UNTIL 까지 매 킥, 이후 로그 간격
    DENSE_RECORD_UNTIL: int = 1000
    LOG_POINTS_PER_DECADE: int = 50

    # k 가 주기 4πN 의 이 비율을 넘으면 경고
    K_PERIOD_WARN_FRACTION: float = 0.1

    # 고전 사상 입력의 단위구 허용오차
    SPHERE_TOLERANCE: float = 1e-9

    # 밀집행렬 오라클 상한
    DENSE_ORACLE_MAX_QUBITS: int = 10


dynamics_settings = DynamicsSettings()
