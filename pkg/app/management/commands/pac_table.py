"""
Commande pac_table : table des termes de complexité PAC-Bayésiens.
"""
import itertools

from app.management.base import CertifCommand
from app.reporting import render_csv, render_json, rows_to_records
from pac_bayes.forms import PacTableForm
from pac_bayes.models import LossTag, PacInput
from pac_bayes.services.bound_service import addend_additive, addend_multiplicative, subexp_regime

HEADER = ['loss_class', 'm', 'delta', 'alpha', 'divergence', 'multiplicative', 'additive', 'regime', 'seed']


class Command(CertifCommand):
    help = "Calcule les deux formes du terme de complexité sur une grille (m, δ, α, divergence)"
    form_class = PacTableForm

    def add_command_arguments(self, parser):
        parser.add_argument(
            '--loss',
            help="Classe de perte (bounded:1, sub-gaussian:1, sub-exponential:1,1, bounded-variance:1)",
        )
        parser.add_argument('--m', help="Tailles d'échantillon, séparées par des virgules")
        parser.add_argument('--delta', help="Niveaux de confiance")
        parser.add_argument('--alpha', help="Ordres α > 1")
        parser.add_argument('--div', help="Valeurs de D_α(Q‖P) (inf accepté)")

    def run(self, params):
        loss = params['loss']
        rows = []
        for m, delta, alpha, div in itertools.product(params['m'], params['delta'], params['alpha'], params['div']):
            pac = PacInput(m=m, delta=delta, alpha=alpha, div=div)
            regime = ''
            if loss.tag == LossTag.SUB_EXPONENTIAL:
                regime = subexp_regime(loss.param, loss.beta, m, delta)
            rows.append([
                loss.token,
                m,
                delta,
                alpha,
                div,
                addend_multiplicative(loss, pac),
                addend_additive(loss, pac),
                regime,
                params['seed'],
            ])
        if params['format'] == 'json':
            return render_json({'seed': params['seed'], 'rows': rows_to_records(HEADER, rows)})
        return render_csv(HEADER, rows)
