"""
Formulaires de l'application pac_bayes.
"""
from django import forms
from django.core.exceptions import ValidationError
from django.utils.translation import gettext_lazy as _

from app.exceptions import BadParameter
from app.forms import EXPERIMENT_PAC, EXPERIMENTS, ParallelRunForm, RunForm, positive, probability
from distributions.models import is_infinite
from .constants import (
    DEFAULT_ALPHA,
    DEFAULT_DELTA,
    DEFAULT_HYPOTHESES,
    DEFAULT_SAMPLE_SIZE,
    DEFAULT_TRIALS,
)
from .models import AddendForm, DataModelKind, LossClass
from .utils import POSTERIOR_PRIOR, POSTERIOR_TEMPERED, parse_divergence, parse_list


def _loss_class(token):
    try:
        return LossClass.parse(token)
    except BadParameter as exc:
        raise ValidationError(str(exc)) from exc


class PacTableForm(RunForm):
    """
    Formulaire de la commande pac_table : grille (m, δ, α, divergence).
    """
    defaults = {
        'loss': 'bounded:1',
        'm': '100',
        'delta': '0.05',
        'alpha': '2',
        'div': '0',
    }

    loss = forms.CharField()
    m = forms.CharField()
    delta = forms.CharField()
    alpha = forms.CharField()
    div = forms.CharField()

    def clean_loss(self):
        return _loss_class(self.cleaned_data['loss'])

    def _clean_list(self, name, cast, check):
        try:
            values = parse_list(self.cleaned_data[name], cast)
        except BadParameter as exc:
            raise ValidationError(str(exc)) from exc
        for value in values:
            if not check(value):
                raise ValidationError(
                    _("Valeur invalide pour %(name)s : %(value)s"), params={'name': name, 'value': value}
                )
        return values

    def clean_m(self):
        return self._clean_list('m', int, lambda value: value >= 1)

    def clean_delta(self):
        return self._clean_list('delta', float, lambda value: 0 < value < 1)

    def clean_alpha(self):
        return self._clean_list('alpha', float, lambda value: value > 1)

    def clean_div(self):
        return self._clean_list('div', parse_divergence, lambda value: is_infinite(value) or value >= 0)


class PacCoverageForm(ParallelRunForm):
    """
    Formulaire de la commande coverage pour l'expérience PAC-Bayes.
    """
    defaults = {
        'experiment': EXPERIMENT_PAC,
        'model': DataModelKind.BERNOULLI.value,
        'form': AddendForm.MULTIPLICATIVE.value,
        'hypotheses': DEFAULT_HYPOTHESES,
        'm': DEFAULT_SAMPLE_SIZE,
        'delta': DEFAULT_DELTA,
        'alpha': DEFAULT_ALPHA,
        'trials': DEFAULT_TRIALS,
        'scale': 1.0,
        'posterior': POSTERIOR_PRIOR,
        'temperature': 1.0,
    }

    experiment = forms.ChoiceField(choices=EXPERIMENTS)
    model = forms.ChoiceField(choices=DataModelKind.choices)
    loss = forms.CharField(required=False)
    form = forms.ChoiceField(choices=AddendForm.choices)
    hypotheses = forms.IntegerField(min_value=1)
    m = forms.IntegerField(min_value=1)
    delta = forms.FloatField()
    alpha = forms.FloatField()
    trials = forms.IntegerField(min_value=1)
    scale = forms.FloatField(min_value=0)
    posterior = forms.ChoiceField(choices=[(POSTERIOR_PRIOR, 'P'), (POSTERIOR_TEMPERED, _('Tempérée'))])
    temperature = forms.FloatField(min_value=0)

    def clean_loss(self):
        token = self.cleaned_data.get('loss')
        return _loss_class(token) if token else None

    def clean_delta(self):
        return probability(self.cleaned_data.get('delta'), 'delta')

    def clean_alpha(self):
        alpha = self.cleaned_data.get('alpha')
        if alpha is not None and not alpha > 1:
            raise ValidationError(_("alpha doit être > 1."))
        return alpha

    def clean(self):
        cleaned_data = super().clean()
        if cleaned_data.get('model') == DataModelKind.SHIFTED_EXPONENTIAL:
            positive(cleaned_data.get('scale'), 'scale')
        return cleaned_data
