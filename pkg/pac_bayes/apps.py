from django.apps import AppConfig


class PacBayesConfig(AppConfig):
    name = "pac_bayes"
    verbose_name = "Bornes PAC-Bayésiennes"
