from django.apps import AppConfig


class McCertifyConfig(AppConfig):
    name = "mc_certify"
    verbose_name = "Intervalles Monte-Carlo certifiés"
