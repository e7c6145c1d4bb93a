from django.apps import AppConfig


class SteadystateConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'steadystate'
