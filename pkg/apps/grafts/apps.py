from django.apps import AppConfig


class GraftsConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'apps.grafts'
    verbose_name = 'Graft Transformations'
