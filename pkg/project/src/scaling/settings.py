from pydantic_settings import BaseSettings, SettingsConfigDict


class ScalingSettings(BaseSettings):
    """Scaling 도메인 설정"""
    model_config = SettingsConfigDict(env_file=".env", env_file_encoding="utf-8", extra="ignore")

    # 콜랩스 비용 전제조건
    MIN_SIZES: int = 2
    MIN_POINTS_PER_SIZE: int = 4

    # 격자 탐색 + 심플렉스
    GRID_SIZE: int = 21
    MAX_ITERATIONS: int = 4000
    SIMPLEX_XATOL: float = 1e-7
    SIMPLEX_FATOL: float = 1e-10

    # 부트스트랩
    BOOTSTRAP_SAMPLES: int = 100

    # 기본 탐색 범위
    DEFAULT_W_C: tuple[float, float] = (0.2, 5.0)
    DEFAULT_NU: tuple[float, float] = (0.2, 1.2)
    DEFAULT_ZETA: tuple[float, float] = (0.0, 1.5)

    # 출력 파일 이름
    FIT_FILENAME: str = "fit.json"
    COLLAPSED_FILENAME: str = "collapsed.csv"


scaling_settings = ScalingSettings()
