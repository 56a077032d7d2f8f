# ------------------------------------------------------------------------------
# 목적:
# - 설정 파일(JSON) → --set key=value → 명시적 플래그 순으로 병합
# - 같은 키를 서로 다른 값으로 두 번 지정하면 충돌(종료 코드 2)
# - 스키마 검증은 pydantic 모델(extra="forbid")이 담당
# ------------------------------------------------------------------------------

import json
from pathlib import Path
from typing import Any, Mapping, Optional, Sequence, TypeVar

from pydantic import BaseModel

from ...src.shared.exceptions import ConfigNotFoundException, ConflictException, ValidationException

ModelT = TypeVar("ModelT", bound=BaseModel)


def read_config_file(path: Optional[Path]) -> dict[str, Any]:
    if path is None:
        return {}
    if not path.is_file():
        raise ConfigNotFoundException(str(path))
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ValidationException(f"config file is not valid JSON: {exc.msg}", details={"path": str(path), "line": exc.lineno})
    if not isinstance(data, dict):
        raise ValidationException("config file must hold a JSON object", details={"path": str(path)})
    return data


def _parse_value(raw: str) -> Any:
    # 숫자/리스트/불리언은 JSON 으로, 나머지는 문자열 그대로
    try:
        return json.loads(raw)
    except json.JSONDecodeError:
        return raw


def parse_overrides(pairs: Sequence[str]) -> dict[str, Any]:
    overrides: dict[str, Any] = {}
    for pair in pairs:
        key, sep, raw = pair.partition("=")
        key = key.strip()
        if not sep or not key:
            raise ValidationException(f"override must look like key=value, got {pair!r}", details={"override": pair})
        value = _parse_value(raw)
        if key in overrides and overrides[key] != value:
            raise ConflictException(
                f"conflicting overrides for {key!r}", details={"key": key, "values": [overrides[key], value]}
            )
        overrides[key] = value
    return overrides


def merge_sources(
    file_data: Mapping[str, Any], overrides: Mapping[str, Any], flags: Mapping[str, Any]
) -> dict[str, Any]:
    """flags 의 None 은 '지정 안 함'. --set 과 플래그가 다른 값이면 충돌."""
    explicit = {k: v for k, v in flags.items() if v is not None}
    for key, value in explicit.items():
        if key in overrides and overrides[key] != value:
            raise ConflictException(
                f"--set {key} conflicts with the explicit flag", details={"key": key, "values": [overrides[key], value]}
            )
    return {**file_data, **overrides, **explicit}


def load_config(
    model: type[ModelT],
    path: Optional[Path],
    overrides: Sequence[str] = (),
    **flags: Any,
) -> ModelT:
    merged = merge_sources(read_config_file(path), parse_overrides(overrides), flags)
    return model.model_validate(merged)
