from django.apps import AppConfig


class DiagThueConfig(AppConfig):
    name = 'diagthue'

    def ready(self):
        from . import settings
        settings.LOGGER.debug(f'diagthue {settings.VERSION} ready, max precision {settings.MAX_PRECISION} bits')
