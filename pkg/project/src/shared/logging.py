# ------------------------------------------------------------------------------
# 목적:
# - 모든 실행 이벤트(명령 시작/종료, realization, 피팅, 경고, 에러)를 JSON 한 줄로 기록
# - Run ID를 환경변수(RUN_ID)에서 재사용하거나 uuid4로 생성하여 ContextVar로 전파
# - 이벤트 성격에 맞춰 실제 logging 레벨 사용 (info/warning/error)
#
# 참고:
# - 다른 모듈에서는 get_run_id()로 현재 실행의 Run ID 조회 가능
# - 워커 스레드는 contextvars.copy_context()로 Run ID를 그대로 물려받음
# ------------------------------------------------------------------------------

import json
import logging
import os
import uuid
from contextvars import ContextVar
from datetime import datetime, timezone
from typing import Any, Optional

run_id_var: ContextVar[Optional[str]] = ContextVar("run_id", default=None)


def get_run_id() -> Optional[str]:
    """현재 실행 컨텍스트의 Run ID 반환(없을 수도 있음)."""
    return run_id_var.get()


def start_run(run_id: Optional[str] = None):
    """Run ID 결정: 인자 → RUN_ID 환경변수 → uuid4 순. reset용 토큰 반환."""
    resolved = run_id or os.getenv("RUN_ID") or str(uuid.uuid4())
    return run_id_var.set(resolved.strip())


def end_run(token) -> None:
    run_id_var.reset(token)


def _default(value: Any):
    # numpy 스칼라 등 JSON 비호환 값
    if hasattr(value, "item"):
        return value.item()
    return str(value)


class StructuredLogger:
    """구조화(JSON) 로깅 헬퍼.

    - 표준 에러(StreamHandler)로 JSON 문자열을 남깁니다. 표준 출력은 결과물(JSON/CSV) 전용.
    - 실제 로그 레벨(logging.INFO/ WARNING/ ERROR)을 함께 사용합니다.
    """

    def __init__(self, name: str = "kicked_top", level: int = logging.INFO):
        self.logger = logging.getLogger(name)
        self.logger.setLevel(level)
        if not self.logger.handlers:
            handler = logging.StreamHandler()
            handler.setFormatter(logging.Formatter("%(message)s"))
            self.logger.addHandler(handler)
        self.logger.propagate = False

    # ---- 공용: 공통 필드 만들기 ------------------------------------------------
    @staticmethod
    def _base(level: str, log_type: str) -> dict:
        return {
            "timestamp": datetime.now(timezone.utc).isoformat().replace("+00:00", "Z"),
            "level": level,
            "type": log_type,
            "run_id": get_run_id() or "-",
        }

    def _emit(self, level: str, log_type: str, fields: dict, exc_info: bool = False) -> None:
        payload = self._base(level, log_type)
        payload.update(fields)
        emit = {
            "INFO": self.logger.info,
            "WARN": self.logger.warning,
            "ERROR": self.logger.error,
            "DEBUG": self.logger.debug,
        }[level]
        emit(json.dumps(payload, ensure_ascii=False, default=_default), exc_info=exc_info)

    # ---- 이벤트 ----------------------------------------------------------------
    def info(self, log_type: str, **fields) -> None:
        self._emit("INFO", log_type, fields)

    def debug(self, log_type: str, **fields) -> None:
        self._emit("DEBUG", log_type, fields)

    def warning(self, log_type: str, **fields) -> None:
        self._emit("WARN", log_type, fields)

    def log_error(self, *, error: Exception, command: str, **fields) -> None:
        self._emit(
            "ERROR",
            "error",
            {
                "error_type": type(error).__name__,
                "error_message": str(error),
                "command": command,
                **fields,
            },
            exc_info=True,
        )


# 전역 로거 인스턴스
structured_logger = StructuredLogger()
