"""
Commande mc_certify : intervalle Monte-Carlo certifié sur un fichier d'échantillons.
"""
from app.management.base import CertifCommand
from app.reporting import render_csv, render_json
from distributions.models import LogConcaveSpec
from distributions.utils import load_samples
from mc_certify.forms import CertifyForm
from mc_certify.models import CertifyInput, IntervalKind
from mc_certify.services.interval_service import certify

HEADER = ['form', 'variant', 'n', 'estimate', 'deviation_term', 'bias_term', 'half_width', 'low', 'high', 'level',
          'seed']


class Command(CertifCommand):
    help = "Calcule l'intervalle certifié pour E_Q[φ] à partir d'échantillons de P"
    form_class = CertifyForm

    def add_command_arguments(self, parser):
        parser.add_argument('--form', help="Forme de l'intervalle (pseudo-alpha, chi2, kl)")
        parser.add_argument('--L', type=float, help="Constante de Lipschitz déclarée de φ")
        parser.add_argument('--gamma', type=float, help="Paramètre de forte log-concavité de P")
        parser.add_argument('--n', type=int, help="Nombre d'échantillons (défaut : taille du fichier)")
        parser.add_argument('--delta', type=float, help="Niveau de confiance")
        parser.add_argument('--div', help="Divergence de la forme choisie (inf accepté)")
        parser.add_argument('--alpha', type=float, help="Ordre de la pseudo α-divergence")
        parser.add_argument('--samples', help="Fichier d'échantillons, un réel par ligne")
        parser.add_argument('--phi', help="Fonction test (affine:a,b ou clipped-affine:a,b,low,high)")
        parser.add_argument('--variant', help="Constantes : sound (défaut) ou printed")

    def run(self, params):
        samples = load_samples(params['samples'])
        kind = IntervalKind(params['form'])
        inp = CertifyInput(
            L=params['L'],
            gamma=params['gamma'],
            n=params['n'] or samples.size,
            delta=params['delta'],
            div=params['div'],
            alpha=params['alpha'] if kind == IntervalKind.PSEUDO_ALPHA else None,
        )
        spec = LogConcaveSpec.replay(params['gamma'], samples)
        report = certify(samples, params['phi'], spec, kind, inp, params['variant'])
        if params['format'] == 'json':
            payload = {'form': kind.value, 'variant': params['variant'], 'n': inp.n}
            payload.update(report.to_dict())
            payload['seed'] = params['seed']
            return render_json(payload)
        return render_csv(HEADER, [[
            kind.value,
            params['variant'],
            inp.n,
            report.estimate,
            report.deviation_term,
            report.bias_term,
            report.half_width,
            report.low,
            report.high,
            report.level,
            params['seed'],
        ]])
