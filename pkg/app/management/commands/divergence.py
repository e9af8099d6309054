"""
Commande divergence : évaluation d'une f-divergence entre deux distributions discrètes.
"""
from app.management.base import CertifCommand
from app.reporting import render_csv, render_json
from distributions.services.distribution_service import make_discrete
from distributions.utils import load_distribution
from divergences.forms import DivergenceForm
from divergences.services.divergence_service import f_divergence

HEADER = ['kind', 'value', 'seed']


class Command(CertifCommand):
    help = "Calcule D_f(Q‖P) pour deux fichiers de distribution"
    form_class = DivergenceForm

    def add_command_arguments(self, parser):
        parser.add_argument('--kind', help="Type de divergence (kl, pearson-chi2, alpha:1.5, ...)")
        parser.add_argument('--q', help="Fichier de distribution Q")
        parser.add_argument('--p', help="Fichier de distribution P")

    def run(self, params):
        q_probs, q_labels = load_distribution(params['q'])
        p_probs, p_labels = load_distribution(params['p'])
        q = make_discrete(q_probs, q_labels or None)
        p = make_discrete(p_probs, p_labels or None)
        kind = params['kind']
        value = f_divergence(kind, q, p)
        if params['format'] == 'json':
            return render_json({'kind': kind.token, 'value': value, 'seed': params['seed']})
        return render_csv(HEADER, [[kind.token, value, params['seed']]])
