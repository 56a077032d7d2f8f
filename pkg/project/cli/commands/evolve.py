import json
from pathlib import Path
from typing import List, Optional

import typer
from dependency_injector.wiring import Provide, inject

from ...src.ensemble.commands import EvolveConfig
from ...src.ensemble.service import EnsembleService
from ...src.ensemble.repository import CsvRunRepository
from ...src.hilbert.domains import BlochAngles
from ...src.theory import operations as theory_ops
from ...src.theory.domains import UnkickedParams
from ...src.theory.service import TheoryService
from ..common.config_loader import load_config
from ..common.outputs import effective_config_document, staged_output, write_json, write_rows_csv
from ..common.runner import run_command
from ..container import MainContainer

UNKICKED_COLUMNS = ["n", "j2_theory"]


@inject
def execute(
    config: EvolveConfig,
    dry_run: bool = False,
    ensemble_service: EnsembleService = Provide[MainContainer.ensemble_service],
    theory_service: TheoryService = Provide[MainContainer.theory_service],
    run_repository: CsvRunRepository = Provide[MainContainer.run_repository],
) -> dict:
    if dry_run:
        return effective_config_document("evolve", config)

    samples = ensemble_service.run_trajectory(config)
    summary = {
        "output": config.output,
        "records": len(samples),
        "baselines": theory_service.baselines(config.n_qubits, config.q),
    }

    unkicked_rows = None
    if config.p == 0:
        params = UnkickedParams(
            n_qubits=config.n_qubits, k=config.k, width=config.width, angles=BlochAngles(config.theta, config.phi)
        )
        kicks = [s.n for s in samples]
        predicted = theory_ops.unkicked_j2([float(n) for n in kicks], params)
        unkicked_rows = [{"n": n, "j2_theory": float(v)} for n, v in zip(kicks, predicted)]
        summary["unkicked"] = {
            "limit": theory_ops.unkicked_j2_limit(params),
            "flagged": params.outside_derivation,
        }

    with staged_output(Path(config.output), "evolve", config) as out:
        run_repository.save_trajectory(out / "trajectory.csv", samples)
        write_json(out / "baselines.json", summary["baselines"])
        if unkicked_rows is not None:
            write_rows_csv(out / "unkicked_prediction.csv", unkicked_rows, UNKICKED_COLUMNS)
    return summary


def evolve(
    config_path: Optional[Path] = typer.Option(None, "--config", "-c", help="JSON config file"),
    overrides: List[str] = typer.Option([], "--set", help="key=value override (repeatable)"),
    n_qubits: Optional[int] = typer.Option(None, "--n-qubits", "-N"),
    k: Optional[float] = typer.Option(None, "--k"),
    p: Optional[float] = typer.Option(None, "--p", help="rotation angle; 0 runs the unkicked model"),
    width: Optional[float] = typer.Option(None, "--width", "-w"),
    theta: Optional[float] = typer.Option(None, "--theta"),
    phi: Optional[float] = typer.Option(None, "--phi"),
    seed: Optional[int] = typer.Option(None, "--seed"),
    n_kicks: Optional[int] = typer.Option(None, "--kicks"),
    realizations: Optional[int] = typer.Option(None, "--realizations", "-R"),
    output: Optional[str] = typer.Option(None, "--output", "-o"),
    dry_run: bool = typer.Option(False, "--dry-run"),
):
    """단일 궤적 (R > 1 이면 무질서 평균 궤적)."""

    def action() -> dict:
        config = load_config(
            EvolveConfig,
            config_path,
            overrides,
            n_qubits=n_qubits,
            k=k,
            p=p,
            width=width,
            theta=theta,
            phi=phi,
            seed=seed,
            n_kicks=n_kicks,
            realizations=realizations,
            output=output,
        )
        return execute(config, dry_run)

    typer.echo(json.dumps(run_command("evolve", action), indent=2, default=str))
