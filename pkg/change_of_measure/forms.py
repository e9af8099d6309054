"""
Formulaires de l'application change_of_measure.
"""
from django import forms
from django.core.exceptions import ValidationError
from django.utils.translation import gettext_lazy as _

from app.exceptions import BadParameter
from app.forms import ParallelRunForm
from distributions.constants import DEFAULT_MAX_SUPPORT, DEFAULT_MIN_SUPPORT
from .constants import DEFAULT_ALPHA, DEFAULT_TRIALS
from .models import InequalityId

ALL_INEQUALITIES = 'all'

DEFAULTS = {
    'inequality': ALL_INEQUALITIES,
    'alpha': DEFAULT_ALPHA,
    'trials': DEFAULT_TRIALS,
    'min_support': DEFAULT_MIN_SUPPORT,
    'max_support': DEFAULT_MAX_SUPPORT,
}


class VerifyForm(ParallelRunForm):
    """
    Formulaire de la commande verify.

    Sans fichiers, vérifie l'inégalité sur des triplets aléatoires ; avec
    q, p et phi, vérifie le seul triplet donné.
    """
    defaults = DEFAULTS

    inequality = forms.CharField()
    alpha = forms.FloatField()
    trials = forms.IntegerField(min_value=1)
    min_support = forms.IntegerField(min_value=1)
    max_support = forms.IntegerField(min_value=1)
    phi_low = forms.FloatField(required=False)
    phi_high = forms.FloatField(required=False)
    q = forms.CharField(required=False)
    p = forms.CharField(required=False)
    phi = forms.CharField(required=False)

    def clean_alpha(self):
        alpha = self.cleaned_data.get('alpha')
        if alpha is not None and not alpha > 1:
            raise ValidationError(_("alpha doit être > 1."))
        return alpha

    def clean_inequality(self):
        """Retourne la liste des inégalités demandées (sans α pour « all »)."""
        token = self.cleaned_data.get('inequality', '').strip()
        if token.lower() == ALL_INEQUALITIES:
            return ALL_INEQUALITIES
        try:
            return [InequalityId.parse(token)]
        except BadParameter as exc:
            raise ValidationError(str(exc)) from exc

    def clean(self):
        cleaned_data = super().clean()
        inequality = cleaned_data.get('inequality')
        if inequality == ALL_INEQUALITIES and cleaned_data.get('alpha') is not None:
            cleaned_data['inequality'] = InequalityId.every(cleaned_data['alpha'])

        min_support = cleaned_data.get('min_support')
        max_support = cleaned_data.get('max_support')
        if min_support and max_support and min_support > max_support:
            raise ValidationError(_("min_support doit être inférieur ou égal à max_support."))

        files = [cleaned_data.get(name) for name in ('q', 'p', 'phi')]
        if any(files) and not all(files):
            raise ValidationError(_("Les fichiers q, p et phi se donnent ensemble."))
        return cleaned_data
