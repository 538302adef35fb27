from django.apps import AppConfig


class HypercoreConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'apps.hypercore'
    verbose_name = 'Hypergraph Core'
