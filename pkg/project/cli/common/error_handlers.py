# ------------------------------------------------------------------------------
# 목적:
# - CLI 전체 예외를 표준 에러 문서(JSON, 표준 에러)와 종료 코드로 일관되게 변환
# - Pydantic ValidationError, 커스텀 예외(BaseAppException), 기타 모든 예외 처리
# - DEBUG 일 때만 traceback 포함, Run ID 포함
# ------------------------------------------------------------------------------

import json
import traceback
from contextlib import contextmanager
from typing import Any, Dict, Iterator, List, Optional

import typer
from pydantic import ValidationError

from ...src.shared.exceptions import EXIT_FAILURE, EXIT_USAGE, BaseAppException
from ...src.shared.logging import get_run_id, structured_logger
from ..settings import settings


# --------------------------------------------------------------------------
# 표준 에러 문서 생성기
# --------------------------------------------------------------------------
def create_error_document(
    exit_code: int,
    error_code: str,
    message: str,
    command: str,
    details: Optional[Dict[str, Any]] = None,
    errors: Optional[List[Dict[str, Any]]] = None,
) -> Dict[str, Any]:
    return {
        "exit_code": exit_code,
        "error_code": error_code,
        "message": message,
        "details": details,
        "errors": errors,
        "command": command,
        "run_id": get_run_id(),
    }


def _emit(document: Dict[str, Any]) -> None:
    typer.echo(json.dumps(document, ensure_ascii=False, default=str), err=True)


# --------------------------------------------------------------------------
# 개별 핸들러
# --------------------------------------------------------------------------
def validation_error_document(exc: ValidationError, command: str) -> Dict[str, Any]:
    """loc 은 ("window", 0) 처럼 섞인 타입이라 str 로 조인."""
    items = []
    for e in exc.errors():
        loc = e.get("loc", [])
        items.append(
            {
                "field": ".".join(str(x) for x in loc) if loc else "",
                "message": e.get("msg", "Invalid input"),
                "value": e.get("input"),
            }
        )
    return create_error_document(EXIT_USAGE, "VALIDATION_ERROR", "Config validation failed", command, errors=items)


def app_error_document(exc: BaseAppException, command: str) -> Dict[str, Any]:
    return create_error_document(exc.exit_code, exc.error_code or "APP_ERROR", exc.message, command, details=exc.details)


def general_error_document(exc: Exception, command: str) -> Dict[str, Any]:
    details: Dict[str, Any] = {"error_type": type(exc).__name__}
    if settings.DEBUG:
        details["traceback"] = traceback.format_exc()[:8192]
    return create_error_document(EXIT_FAILURE, "INTERNAL_ERROR", "An unexpected error occurred", command, details=details)


# --------------------------------------------------------------------------
# 명령 감싸기
# --------------------------------------------------------------------------
@contextmanager
def handle_errors(command: str) -> Iterator[None]:
    """예외 → JSON 에러 문서 + typer.Exit(종료 코드)."""
    try:
        yield
    except typer.Exit:
        raise
    except ValidationError as exc:
        document = validation_error_document(exc, command)
    except BaseAppException as exc:
        structured_logger.log_error(error=exc, command=command, error_code=exc.error_code, exit_code=exc.exit_code)
        document = app_error_document(exc, command)
    except Exception as exc:
        structured_logger.log_error(error=exc, command=command)
        document = general_error_document(exc, command)
    else:
        return
    _emit(document)
    raise typer.Exit(code=document["exit_code"])
