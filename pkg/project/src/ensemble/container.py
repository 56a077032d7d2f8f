from dependency_injector import containers, providers

from .repository import CsvRunRepository
from .service import EnsembleService
from .settings import EnsembleSettings


class EnsembleContainer(containers.DeclarativeContainer):
    """Ensemble 도메인 컨테이너"""

    logger = providers.Dependency()

    settings = providers.Singleton(EnsembleSettings)
    repository = providers.Singleton(CsvRunRepository, settings=settings)
    ensemble_service = providers.Factory(EnsembleService, settings=settings, repository=repository, logger=logger)
