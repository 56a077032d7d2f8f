from pydantic_settings import BaseSettings, SettingsConfigDict


class EnsembleSettings(BaseSettings):
    """Ensemble 도메인 설정 (데스크 규모 기본값)"""
    model_config = SettingsConfigDict(env_file=".env", env_file_encoding="utf-8", extra="ignore")

    # 스윕 기본값
    DEFAULT_N_MAX: int = 20_000
    DEFAULT_WINDOW_START: int = 5_000
    DEFAULT_WINDOW_END: int = 20_000
    DEFAULT_REALIZATIONS: int = 50
    DEFAULT_MASTER_SEED: int = 20_240_601

    # 기록 간격 (킥 단위). 엔트로피는 J² 보다 10배 성기게
    DEFAULT_OBS_STRIDE: int = 10
    DEFAULT_ENTROPY_STRIDE: int = 100

    # 포화 추적 다운샘플 점 수
    TRACE_POINTS: int = 200

    # 메모리 용량 점검: 워커당 상태벡터 버퍼 수, 가용 메모리 중 사용할 비율
    BUFFERS_PER_WORKER: int = 4
    MEMORY_HEADROOM: float = 0.5

    # 출력 파일 이름
    RUNS_FILENAME: str = "runs.csv"
    AGGREGATE_FILENAME: str = "aggregate.csv"
    TRAJECTORY_DIRNAME: str = "trajectories"


ensemble_settings = EnsembleSettings()
