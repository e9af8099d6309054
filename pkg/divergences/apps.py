from django.apps import AppConfig


class DivergencesConfig(AppConfig):
    name = "divergences"
    verbose_name = "f-divergences et conjuguées convexes"
