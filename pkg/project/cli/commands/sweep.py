import json
from pathlib import Path
from typing import List, Optional

import typer
from dependency_injector.wiring import Provide, inject

from ...src.ensemble.commands import SweepConfig
from ...src.ensemble.service import EnsembleService
from ...src.shared.exceptions import ValidationException
from ..common.config_loader import merge_sources, parse_overrides, read_config_file
from ..common.outputs import effective_config_document, staged_output
from ..common.runner import run_command
from ..container import MainContainer

PRESETS = ("desk", "full")


def resolve_config(
    config_path: Optional[Path], overrides: List[str], preset: Optional[str], **flags
) -> SweepConfig:
    merged = merge_sources(read_config_file(config_path), parse_overrides(overrides), flags)
    if preset is None:
        return SweepConfig.model_validate(merged)
    if preset not in PRESETS:
        raise ValidationException(f"unknown preset {preset!r}", details={"allowed": list(PRESETS)})
    return SweepConfig.preset(preset, **merged)


@inject
def execute(
    config: SweepConfig,
    threads: int = 1,
    dry_run: bool = False,
    ensemble_service: EnsembleService = Provide[MainContainer.ensemble_service],
) -> dict:
    if dry_run:
        return effective_config_document("sweep", config, {"threads": threads})
    with staged_output(Path(config.output), "sweep", config) as out:
        aggregates = ensemble_service.sweep(config, out, workers=threads)
    return {"output": config.output, "aggregates": [a.to_row() for a in aggregates]}


def sweep(
    config_path: Optional[Path] = typer.Option(None, "--config", "-c", help="JSON config file"),
    overrides: List[str] = typer.Option([], "--set", help="key=value override (repeatable)"),
    preset: Optional[str] = typer.Option(None, "--preset", help="desk | full"),
    realizations: Optional[int] = typer.Option(None, "--realizations", "-R"),
    master_seed: Optional[int] = typer.Option(None, "--seed"),
    output: Optional[str] = typer.Option(None, "--output", "-o"),
    threads: int = typer.Option(1, "--threads", "-j", min=1, help="worker threads; results do not depend on it"),
    dry_run: bool = typer.Option(False, "--dry-run"),
):
    """(N, w, realization) 격자 스윕 → runs.csv, aggregate.csv."""

    def action() -> dict:
        config = resolve_config(
            config_path, overrides, preset, realizations=realizations, master_seed=master_seed, output=output
        )
        return execute(config, threads, dry_run)

    typer.echo(json.dumps(run_command("sweep", action), indent=2, default=str))
