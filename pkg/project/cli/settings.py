from pydantic_settings import BaseSettings, SettingsConfigDict


class CliSettings(BaseSettings):
    """CLI 설정"""
    model_config = SettingsConfigDict(env_file=".env", env_file_encoding="utf-8", extra="ignore")

    # 애플리케이션 설정
    APP_NAME: str = "disordered-kicked-top"
    APP_VERSION: str = "0.1.0"
    SCHEMA_VERSION: str = "1"
    DEBUG: bool = False

    # 로깅 설정
    LOG_LEVEL: str = "INFO"

    # 성능 모니터링 설정
    SLOW_COMMAND_THRESHOLD: float = 60.0  # seconds

    # 출력 설정
    EFFECTIVE_CONFIG_FILENAME: str = "effective_config.json"
    PARTIAL_SUFFIX: str = ".partial"


settings = CliSettings()
