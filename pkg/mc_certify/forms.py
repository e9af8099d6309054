"""
Formulaires de l'application mc_certify.
"""
from django import forms
from django.core.exceptions import ValidationError
from django.utils.translation import gettext_lazy as _

from app.exceptions import BadParameter
from app.forms import EXPERIMENT_MC, EXPERIMENTS, ParallelRunForm, RunForm, positive, probability
from distributions.models import Gaussian1D, is_infinite
from pac_bayes.utils import parse_divergence
from .constants import DEFAULT_ALPHA, DEFAULT_DELTA, DEFAULT_REPEATS, DEFAULT_SAMPLE_SIZE
from .models import IntervalKind, PhiMap, Variant

IDENTITY_TOKEN = 'affine:1,0'


def _phi_map(token):
    try:
        return PhiMap.parse(token)
    except BadParameter as exc:
        raise ValidationError(str(exc)) from exc


class IntervalFieldsMixin(forms.Form):
    """
    Champs communs aux deux formulaires : forme, niveau, ordre et variante.
    """
    form = forms.ChoiceField(choices=IntervalKind.choices)
    delta = forms.FloatField()
    alpha = forms.FloatField()
    variant = forms.ChoiceField(choices=Variant.choices)

    def clean_delta(self):
        return probability(self.cleaned_data.get('delta'), 'delta')

    def clean_alpha(self):
        alpha = self.cleaned_data.get('alpha')
        if alpha is not None and not alpha > 1:
            raise ValidationError(_("alpha doit être > 1."))
        return alpha


class CertifyForm(IntervalFieldsMixin, RunForm):
    """
    Formulaire de la commande mc_certify : intervalle sur un fichier d'échantillons.
    """
    defaults = {
        'form': IntervalKind.KL.value,
        'delta': DEFAULT_DELTA,
        'alpha': DEFAULT_ALPHA,
        'variant': Variant.SOUND.value,
        'phi': IDENTITY_TOKEN,
    }

    L = forms.FloatField()
    gamma = forms.FloatField()
    n = forms.IntegerField(min_value=1, required=False)
    div = forms.CharField()
    samples = forms.CharField()
    phi = forms.CharField()

    def clean_L(self):
        return positive(self.cleaned_data.get('L'), 'L')

    def clean_gamma(self):
        return positive(self.cleaned_data.get('gamma'), 'gamma')

    def clean_div(self):
        try:
            value = parse_divergence(self.cleaned_data['div'])
        except ValueError as exc:
            raise ValidationError(_("Divergence non numérique.")) from exc
        if not is_infinite(value) and not value >= 0:
            raise ValidationError(_("La divergence doit être positive ou nulle."))
        return value

    def clean_phi(self):
        return _phi_map(self.cleaned_data['phi'])


class McCoverageForm(IntervalFieldsMixin, ParallelRunForm):
    """
    Formulaire de la commande coverage pour l'expérience Monte-Carlo.

    Q et P sont des gaussiennes données par moyenne et variance.
    """
    defaults = {
        'experiment': EXPERIMENT_MC,
        'form': IntervalKind.KL.value,
        'delta': DEFAULT_DELTA,
        'alpha': DEFAULT_ALPHA,
        'variant': Variant.SOUND.value,
        'phi': IDENTITY_TOKEN,
        'q_mean': 0.5,
        'q_var': 1.0,
        'p_mean': 0.0,
        'p_var': 1.0,
        'n': DEFAULT_SAMPLE_SIZE,
        'repeats': DEFAULT_REPEATS,
    }

    experiment = forms.ChoiceField(choices=EXPERIMENTS)
    phi = forms.CharField()
    q_mean = forms.FloatField()
    q_var = forms.FloatField()
    p_mean = forms.FloatField()
    p_var = forms.FloatField()
    n = forms.IntegerField(min_value=1)
    repeats = forms.IntegerField(min_value=1)

    def clean_phi(self):
        phi = _phi_map(self.cleaned_data['phi'])
        if phi.lipschitz == 0:
            raise ValidationError(_("φ constante : constante de Lipschitz nulle."))
        return phi

    def clean(self):
        cleaned_data = super().clean()
        for name in ('q', 'p'):
            mean = cleaned_data.get(f'{name}_mean')
            var = cleaned_data.get(f'{name}_var')
            if mean is None or var is None:
                continue
            try:
                cleaned_data[name] = Gaussian1D(mean=mean, variance=var)
            except BadParameter as exc:
                raise ValidationError(str(exc)) from exc
        return cleaned_data
