import json
from pathlib import Path
from typing import List, Optional

import typer
from dependency_injector.wiring import Provide, inject

from ...src.scaling.commands import AnalyzeConfig
from ...src.scaling.service import ScalingService
from ..common.config_loader import load_config
from ..common.outputs import effective_config_document, staged_output
from ..common.runner import run_command
from ..container import MainContainer


@inject
def execute(
    config: AnalyzeConfig,
    dry_run: bool = False,
    scaling_service: ScalingService = Provide[MainContainer.scaling_service],
) -> dict:
    if dry_run:
        return effective_config_document("analyze", config)
    with staged_output(Path(config.output), "analyze", config) as out:
        report = scaling_service.analyze(config, out)
    return report.to_json()


def analyze(
    runs: Optional[str] = typer.Option(None, "--runs", help="runs.csv from a sweep"),
    config_path: Optional[Path] = typer.Option(None, "--config", "-c", help="JSON config file"),
    overrides: List[str] = typer.Option([], "--set", help="key=value override (repeatable)"),
    observable: Optional[str] = typer.Option(None, "--observable", help="j2 | entropy | pss_weight"),
    seed: Optional[int] = typer.Option(None, "--seed"),
    bootstrap: Optional[int] = typer.Option(None, "--bootstrap", "-B"),
    output: Optional[str] = typer.Option(None, "--output", "-o"),
    dry_run: bool = typer.Option(False, "--dry-run"),
):
    """유한크기 스케일링 콜랩스 피팅 → fit.json, collapsed.csv."""

    def action() -> dict:
        config = load_config(
            AnalyzeConfig,
            config_path,
            overrides,
            runs=runs,
            observable=observable,
            seed=seed,
            bootstrap=bootstrap,
            output=output,
        )
        return execute(config, dry_run)

    typer.echo(json.dumps(run_command("analyze", action), indent=2, default=str))
