from django.apps import AppConfig


class ChangeOfMeasureConfig(AppConfig):
    name = "change_of_measure"
    verbose_name = "Inégalités de changement de mesure"
