from typing import Callable, TypeVar

from ...src.shared.logging import end_run, start_run
from ..middlewares.performance import track_command
from .error_handlers import handle_errors

T = TypeVar("T")


def run_command(command: str, action: Callable[[], T]) -> T:
    """Run ID 설정 → 에러 변환 → 시간 측정 순으로 감싼 뒤 action 실행."""
    token = start_run()
    try:
        with handle_errors(command), track_command(command):
            return action()
    finally:
        end_run(token)
