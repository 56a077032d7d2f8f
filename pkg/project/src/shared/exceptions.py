from typing import Any, Dict, Optional

# CLI 종료 코드
EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_CAPACITY = 3
EXIT_NO_OVERLAP = 4


class BaseAppException(Exception):
    """애플리케이션 기본 예외 클래스"""

    def __init__(
        self,
        message: str,
        exit_code: int = EXIT_FAILURE,
        error_code: Optional[str] = None,
        details: Optional[Dict[str, Any]] = None
    ):
        self.message = message
        self.exit_code = exit_code
        self.error_code = error_code
        self.details = details or {}
        super().__init__(self.message)


class ValidationException(BaseAppException, ValueError):
    """유효성 검증 실패 예외 (범위 밖 인자, 비유니터리 행렬, 깨진 밀도행렬 등)"""

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(
            message=message,
            exit_code=EXIT_USAGE,
            error_code="VALIDATION_ERROR",
            details=details
        )


class SizeException(ValidationException):
    """큐비트 수가 지원 범위를 벗어남"""

    def __init__(self, n_qubits: int, minimum: int, maximum: int):
        super().__init__(
            message=f"n_qubits={n_qubits} outside supported range [{minimum}, {maximum}]",
            details={"n_qubits": n_qubits, "min": minimum, "max": maximum}
        )
        self.error_code = "SIZE_ERROR"


class ConfigNotFoundException(BaseAppException):
    """설정 파일을 찾을 수 없음 예외"""

    def __init__(self, path: str):
        super().__init__(
            message=f"config file not found: {path}",
            exit_code=EXIT_USAGE,
            error_code="CONFIG_NOT_FOUND",
            details={"path": path}
        )


class ConflictException(BaseAppException):
    """설정 오버라이드 충돌 예외 (같은 키에 서로 다른 값 등)"""

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(
            message=message,
            exit_code=EXIT_USAGE,
            error_code="CONFLICT",
            details=details
        )


class CapacityException(BaseAppException):
    """상태벡터가 가용 메모리를 초과함"""

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(
            message=message,
            exit_code=EXIT_CAPACITY,
            error_code="CAPACITY_ERROR",
            details=details
        )


class CollapseOverlapException(BaseAppException):
    """데이터 콜랩스에서 크기 간 x̃ 구간이 전혀 겹치지 않음"""

    def __init__(self, details: Optional[Dict[str, Any]] = None):
        super().__init__(
            message="no collapse overlap",
            exit_code=EXIT_NO_OVERLAP,
            error_code="NO_COLLAPSE_OVERLAP",
            details=details
        )


class ComputationException(BaseAppException):
    """개별 realization 계산 실패 (스윕 전체를 중단시킴)"""

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(
            message=message,
            exit_code=EXIT_FAILURE,
            error_code="COMPUTATION_ERROR",
            details=details
        )
