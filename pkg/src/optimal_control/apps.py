from django.apps import AppConfig


class OptimalControlConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'optimal_control'
