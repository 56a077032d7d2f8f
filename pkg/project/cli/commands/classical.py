import json
from pathlib import Path
from typing import List, Optional

import typer

from ...src.theory.portrait import PORTRAIT_COLUMNS, phase_portrait
from ...src.theory.queries import ClassicalConfig
from ..common.config_loader import load_config
from ..common.outputs import effective_config_document, staged_output, write_rows_csv
from ..common.runner import run_command


def execute(config: ClassicalConfig, dry_run: bool = False) -> dict:
    if dry_run:
        return effective_config_document("classical", config)
    thetas, phis = config.thetas(), config.phis()
    with staged_output(Path(config.output), "classical", config) as out:
        rows = (point.to_row() for point in phase_portrait(config.k, thetas, phis, config.steps))
        write_rows_csv(out / "portrait.csv", rows, PORTRAIT_COLUMNS)
    return {"output": config.output, "orbits": len(thetas) * len(phis), "steps": config.steps}


def classical(
    config_path: Optional[Path] = typer.Option(None, "--config", "-c", help="JSON config file"),
    overrides: List[str] = typer.Option([], "--set", help="key=value override (repeatable)"),
    k: Optional[float] = typer.Option(None, "--k"),
    steps: Optional[int] = typer.Option(None, "--steps"),
    output: Optional[str] = typer.Option(None, "--output", "-o"),
    dry_run: bool = typer.Option(False, "--dry-run"),
):
    """고전 사상 위상 초상 → portrait.csv."""

    def action() -> dict:
        config = load_config(ClassicalConfig, config_path, overrides, k=k, steps=steps, output=output)
        return execute(config, dry_run)

    typer.echo(json.dumps(run_command("classical", action), indent=2, default=str))
