from django.apps import AppConfig


class CarbonConfig(AppConfig):
    name = 'apps.carbon'
    verbose_name = 'Carbon'
