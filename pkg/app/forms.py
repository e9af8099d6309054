"""
Formulaire commun aux paramètres des commandes.
"""
from django import forms
from django.conf import settings
from django.core.exceptions import ValidationError
from django.utils.translation import gettext_lazy as _

from .exceptions import BadParameter

OUTPUT_FORMATS = [('csv', 'CSV'), ('json', 'JSON')]

EXPERIMENT_PAC = 'pac'
EXPERIMENT_MC = 'mc'
EXPERIMENTS = [(EXPERIMENT_PAC, 'PAC-Bayes'), (EXPERIMENT_MC, 'Monte-Carlo')]

# Options traitées par la commande elle-même, jamais par un formulaire
FILE_ONLY_KEYS = frozenset({'output'})


class RunForm(forms.Form):
    """
    Paramètres partagés par toutes les commandes : graine et format de sortie.
    """
    defaults: dict = {}

    seed = forms.IntegerField(min_value=0, required=False)
    format = forms.ChoiceField(choices=OUTPUT_FORMATS, required=False)

    def clean_seed(self):
        seed = self.cleaned_data.get('seed')
        return settings.CERTIF_SEED if seed is None else seed

    def clean_format(self):
        return self.cleaned_data.get('format') or settings.CERTIF_OUTPUT_FORMAT

    @classmethod
    def known_keys(cls) -> frozenset:
        """Clés acceptées dans un fichier --config."""
        return frozenset(cls.base_fields) | FILE_ONLY_KEYS

    def parameters(self) -> dict:
        """
        Retourne les paramètres validés.

        Raises:
            BadParameter: Si un champ est invalide
        """
        if not self.is_valid():
            messages = []
            for field, errors in self.errors.items():
                name = field if field != '__all__' else 'paramètres'
                messages.append(f"{name} : {' '.join(str(error) for error in errors)}")
            raise BadParameter(' ; '.join(messages))
        return self.cleaned_data


def positive(value, name):
    """Lève une ValidationError si value n'est pas strictement positif."""
    if value is not None and not value > 0:
        raise ValidationError(_("%(name)s doit être strictement positif."), params={'name': name})
    return value


def probability(value, name):
    """Lève une ValidationError si value n'est pas dans ]0, 1[."""
    if value is not None and not 0 < value < 1:
        raise ValidationError(_("%(name)s doit être dans ]0, 1[."), params={'name': name})
    return value


class ParallelRunForm(RunForm):
    """
    Paramètres des commandes répartissant des essais sur plusieurs threads.
    """
    workers = forms.IntegerField(min_value=1, required=False)

    def clean_workers(self):
        workers = self.cleaned_data.get('workers')
        return settings.CERTIF_WORKERS if workers is None else workers
