from dependency_injector import containers, providers

from .service import TheoryService


class TheoryContainer(containers.DeclarativeContainer):
    """Theory 도메인 컨테이너"""

    theory_service = providers.Singleton(TheoryService)
