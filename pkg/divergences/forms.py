"""
Formulaires de l'application divergences.
"""
from django import forms
from django.core.exceptions import ValidationError

from app.exceptions import BadParameter
from app.forms import RunForm
from .models import DivergenceKind


class DivergenceForm(RunForm):
    """
    Formulaire de la commande divergence : type et fichiers de Q et P.
    """
    kind = forms.CharField()
    q = forms.CharField()
    p = forms.CharField()

    def clean_kind(self):
        try:
            return DivergenceKind.parse(self.cleaned_data['kind'])
        except BadParameter as exc:
            raise ValidationError(str(exc)) from exc
