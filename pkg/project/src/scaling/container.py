from dependency_injector import containers, providers

from ..ensemble.repository import CsvRunRepository
from .repository import ScalingRepository
from .service import ScalingService
from .settings import ScalingSettings


class ScalingContainer(containers.DeclarativeContainer):
    """Scaling 도메인 컨테이너"""

    logger = providers.Dependency()
    run_repository = providers.Dependency(instance_of=CsvRunRepository)

    settings = providers.Singleton(ScalingSettings)
    repository = providers.Singleton(ScalingRepository, settings=settings)
    scaling_service = providers.Factory(
        ScalingService,
        settings=settings,
        run_repository=run_repository,
        repository=repository,
        logger=logger,
    )
