from dependency_injector import containers, providers

from ..src.ensemble.container import EnsembleContainer
from ..src.scaling.container import ScalingContainer
from ..src.shared.logging import structured_logger
from ..src.theory.container import TheoryContainer


class MainContainer(containers.DeclarativeContainer):

    logger = providers.Object(structured_logger)

    theory = providers.Container(TheoryContainer)

    theory_service = theory.theory_service

    ensemble = providers.Container(
        EnsembleContainer,
        logger=logger
        )

    ensemble_service = ensemble.ensemble_service
    run_repository = ensemble.repository

    scaling = providers.Container(
        ScalingContainer,
        logger=logger,
        run_repository=ensemble.repository
        )

    scaling_service = scaling.scaling_service
