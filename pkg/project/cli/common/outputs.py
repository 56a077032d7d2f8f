# ------------------------------------------------------------------------------
# 목적:
# - 출력 디렉터리를 <name>.partial 에 먼저 쓰고, 명령이 끝까지 성공했을 때만 이름 변경
# - 실패하면 .partial 이 남아 미완성임이 드러남
# - 모든 출력 디렉터리에 effective_config.json 기록
# ------------------------------------------------------------------------------

import json
import shutil
from contextlib import contextmanager
from pathlib import Path
from typing import Any, Iterable, Iterator, Optional

import pandas as pd
from pydantic import BaseModel

from ...src.ensemble.repository import FLOAT_FORMAT
from ...src.shared.exceptions import ConflictException
from ...src.shared.logging import get_run_id
from ..settings import settings


def effective_config_document(command: str, config: BaseModel, extra: Optional[dict[str, Any]] = None) -> dict[str, Any]:
    return {
        "command": command,
        "app_version": settings.APP_VERSION,
        "schema_version": settings.SCHEMA_VERSION,
        "config": config.model_dump(mode="json"),
        **(extra or {}),
    }


def write_json(path: Path, document: Any) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(document, indent=2, sort_keys=True, default=str) + "\n", encoding="utf-8")
    return path


def write_rows_csv(path: Path, rows: Iterable[dict], columns: list[str]) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    pd.DataFrame(list(rows), columns=columns).to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    return path


@contextmanager
def staged_output(directory: Path, command: str, config: BaseModel) -> Iterator[Path]:
    """<directory>.partial 에 쓰고 성공 시 <directory> 로 교체.

    기존 <directory> 는 effective_config.json 이 있는 이전 출력일 때만 덮어쓴다.
    """
    marker = settings.EFFECTIVE_CONFIG_FILENAME
    if directory.exists() and not (directory / marker).is_file():
        raise ConflictException(
            "output directory exists and is not a previous run", details={"output": str(directory)}
        )
    partial = directory.with_name(directory.name + settings.PARTIAL_SUFFIX)
    if partial.exists():
        shutil.rmtree(partial)
    partial.mkdir(parents=True)

    write_json(partial / marker, effective_config_document(command, config, {"run_id": get_run_id()}))
    yield partial

    if directory.exists():
        shutil.rmtree(directory)
    partial.rename(directory)
