from django.apps import AppConfig


class ExtremalConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'apps.extremal'
    verbose_name = 'Extremal Search'
