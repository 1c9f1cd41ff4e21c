from django.apps import AppConfig


class StochasticConfig(AppConfig):
    name = 'apps.stochastic'
    verbose_name = 'Stochastic'
