import json
from pathlib import Path
from typing import List, Optional

import typer
from dependency_injector.wiring import Provide, inject

from ...src.theory.queries import TheoryQuery
from ...src.theory.service import TheoryService
from ..common.config_loader import load_config
from ..common.runner import run_command
from ..container import MainContainer


@inject
def execute(
    query: TheoryQuery,
    samples: int = 0,
    seed: int = 0,
    theory_service: TheoryService = Provide[MainContainer.theory_service],
) -> dict:
    result = theory_service.evaluate(query)
    if samples > 0:
        result["sampling"] = theory_service.random_state_check(query.n_qubits, query.q, samples, seed)
    return result


def theory(
    name: str = typer.Argument(..., help="baseline name, e.g. page_entropy or baselines"),
    config_path: Optional[Path] = typer.Option(None, "--config", "-c", help="JSON config file"),
    overrides: List[str] = typer.Option([], "--set", help="key=value override (repeatable)"),
    n_qubits: Optional[int] = typer.Option(None, "--n-qubits", "-N"),
    q: Optional[int] = typer.Option(None, "--q"),
    k: Optional[float] = typer.Option(None, "--k"),
    width: Optional[float] = typer.Option(None, "--width", "-w"),
    theta: Optional[float] = typer.Option(None, "--theta"),
    phi: Optional[float] = typer.Option(None, "--phi"),
    t: Optional[List[float]] = typer.Option(None, "--t", help="time point (repeatable)"),
    samples: int = typer.Option(0, "--samples", min=0, help="random-state sampling check"),
    seed: int = typer.Option(0, "--seed", min=0),
):
    """이론 기준값을 JSON 으로."""

    def action() -> dict:
        query = load_config(
            TheoryQuery,
            config_path,
            overrides,
            name=name,
            n_qubits=n_qubits,
            q=q,
            k=k,
            width=width,
            theta=theta,
            phi=phi,
            t=list(t) if t else None,
        )
        return execute(query, samples, seed)

    typer.echo(json.dumps(run_command("theory", action), indent=2, default=str))
