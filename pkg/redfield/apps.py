from django.apps import AppConfig


class RedfieldConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'redfield'
