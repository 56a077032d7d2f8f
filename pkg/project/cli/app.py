import logging
from typing import Optional

import typer

from ..src.shared.logging import structured_logger
from .commands.analyze import analyze
from .commands.classical import classical
from .commands.evolve import evolve
from .commands.sweep import sweep
from .commands.theory import theory
from .container import MainContainer
from .settings import settings

container = MainContainer()


def _version(value: bool) -> None:
    if value:
        typer.echo(f"{settings.APP_NAME} {settings.APP_VERSION} (schema {settings.SCHEMA_VERSION})")
        raise typer.Exit()


def create_app() -> typer.Typer:
    app = typer.Typer(name=settings.APP_NAME, no_args_is_help=True, add_completion=False)

    container.wire(modules=[
        "project.cli.commands.evolve",
        "project.cli.commands.sweep",
        "project.cli.commands.analyze",
        "project.cli.commands.theory",
    ])

    @app.callback()
    def main(
        version: Optional[bool] = typer.Option(
            None, "--version", callback=_version, is_eager=True, help="print artifact and schema versions"
        ),
    ):
        """무질서 kicked top 시뮬레이션 / 앙상블 / 유한크기 스케일링."""
        structured_logger.logger.setLevel(logging.DEBUG if settings.DEBUG else getattr(logging, settings.LOG_LEVEL))

    app.command("evolve")(evolve)
    app.command("sweep")(sweep)
    app.command("analyze")(analyze)
    app.command("theory")(theory)
    app.command("classical")(classical)
    return app


app = create_app()


def run() -> None:
    app()
