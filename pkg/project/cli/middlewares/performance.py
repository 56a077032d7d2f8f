# ------------------------------------------------------------------------------
# 목적:
# - 각 CLI 명령의 처리 시간을 수집/로그로 기록
# - 시작/종료 이벤트와 경과 시간(ms), 느린 명령 감지
# - 예외가 나도 처리 시간을 남긴 뒤 그대로 전파 (종료 코드는 error_handlers 담당)
# ------------------------------------------------------------------------------

import time
from contextlib import contextmanager
from typing import Iterator

from ...src.shared.logging import StructuredLogger, structured_logger
from ..settings import settings


@contextmanager
def track_command(
    command: str,
    log: StructuredLogger = structured_logger,
    slow_seconds: float = settings.SLOW_COMMAND_THRESHOLD,
    **fields,
) -> Iterator[None]:
    """command_start / command_end 로그, slow_seconds 초과 시 performance WARN."""
    start = time.perf_counter()
    log.info("command_start", command=command, **fields)
    status = "error"
    try:
        yield
        status = "ok"
    finally:
        elapsed = time.perf_counter() - start
        log.info("command_end", command=command, status=status, elapsed_ms=round(elapsed * 1000.0, 2))
        if elapsed > slow_seconds:
            log.warning(
                "performance",
                command=command,
                elapsed_ms=round(elapsed * 1000.0, 2),
                threshold_ms=round(slow_seconds * 1000.0, 2),
            )
