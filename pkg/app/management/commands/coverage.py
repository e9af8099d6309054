"""
Commande coverage : couverture empirique des bornes PAC-Bayes ou des intervalles Monte-Carlo.
"""
from app.exceptions import BadParameter
from app.forms import EXPERIMENT_MC, EXPERIMENT_PAC
from app.management.base import CertifCommand
from app.reporting import render_csv, render_json
from mc_certify.forms import McCoverageForm
from mc_certify.services.coverage_service import mc_coverage_experiment
from pac_bayes.forms import PacCoverageForm
from pac_bayes.services.gibbs_service import coverage_experiment
from pac_bayes.utils import build_experiment, default_loss

PAC_HEADER = ['experiment', 'model', 'loss_class', 'form', 'posterior', 'trials', 'violations', 'violation_rate',
              'vacuous', 'seed']
MC_HEADER = ['experiment', 'form', 'variant', 'phi', 'repeats', 'covered', 'coverage', 'level', 'truth',
             'mean_half_width', 'seed']

FORMS = {EXPERIMENT_PAC: PacCoverageForm, EXPERIMENT_MC: McCoverageForm}


class Command(CertifCommand):
    help = "Mesure la couverture empirique d'une borne PAC-Bayes (pac) ou d'un intervalle Monte-Carlo (mc)"

    def add_command_arguments(self, parser):
        parser.add_argument('--experiment', help="pac (défaut) ou mc")
        parser.add_argument('--form', help="pac : multiplicative|additive ; mc : pseudo-alpha|chi2|kl")
        parser.add_argument('--delta', type=float, help="Niveau de confiance")
        parser.add_argument('--alpha', type=float, help="Ordre α > 1")
        parser.add_argument('--workers', type=int, help="Nombre de threads")
        pac = parser.add_argument_group("Expérience pac")
        pac.add_argument('--model', help="Loi des pertes (bernoulli, gaussian, shifted-exponential)")
        pac.add_argument('--loss', help="Classe de perte déclarée (défaut : la plus fine certifiée)")
        pac.add_argument('--hypotheses', type=int, help="Nombre d'hypothèses")
        pac.add_argument('--m', type=int, help="Taille de l'échantillon")
        pac.add_argument('--trials', type=int, help="Nombre d'essais")
        pac.add_argument('--scale', type=float, help="Écart-type ou échelle des pertes")
        pac.add_argument('--posterior', help="prior ou tempered")
        pac.add_argument('--temperature', type=float, help="λ de la loi tempérée")
        mc = parser.add_argument_group("Expérience mc")
        mc.add_argument('--q-mean', dest='q_mean', type=float)
        mc.add_argument('--q-var', dest='q_var', type=float)
        mc.add_argument('--p-mean', dest='p_mean', type=float)
        mc.add_argument('--p-var', dest='p_var', type=float)
        mc.add_argument('--phi', help="Fonction test (affine:a,b ou clipped-affine:a,b,low,high)")
        mc.add_argument('--n', type=int, help="Échantillons par répétition")
        mc.add_argument('--repeats', type=int, help="Nombre de répétitions")
        mc.add_argument('--variant', help="Constantes : sound (défaut) ou printed")

    def get_form_class(self, options, from_file):
        experiment = options.get('experiment') or from_file.get('experiment') or EXPERIMENT_PAC
        if experiment not in FORMS:
            raise BadParameter(f"Expérience inconnue : {experiment!r}")
        return FORMS[experiment]

    def collect_parameters(self, form_class, options, from_file):
        known = form_class.known_keys()
        foreign = sorted(
            key
            for other in FORMS.values() if other is not form_class
            for key in other.known_keys() - known
            if options.get(key) is not None
        )
        if foreign:
            raise BadParameter(f"Options sans effet pour cette expérience : {', '.join(foreign)}")
        return super().collect_parameters(form_class, options, from_file)

    def run(self, params):
        if params['experiment'] == EXPERIMENT_MC:
            return self.run_mc(params)
        return self.run_pac(params)

    def run_pac(self, params):
        experiment = build_experiment(
            params['model'],
            params['hypotheses'],
            params['m'],
            params['trials'],
            params['seed'],
            scale=params['scale'],
            posterior=params['posterior'],
            temperature=params['temperature'],
        )
        loss = params['loss'] or default_loss(params['model'], params['scale'])
        result = coverage_experiment(
            experiment, loss, params['form'], params['delta'], params['alpha'], workers=params['workers']
        )
        row = [
            EXPERIMENT_PAC,
            params['model'],
            loss.token,
            params['form'],
            params['posterior'],
            result.trials,
            result.violations,
            result.violation_rate,
            result.vacuous,
            params['seed'],
        ]
        return self.render(params, PAC_HEADER, row)

    def run_mc(self, params):
        result = mc_coverage_experiment(
            params['form'],
            params['q'],
            params['p'],
            params['phi'],
            params['n'],
            params['delta'],
            params['repeats'],
            params['seed'],
            alpha=params['alpha'],
            variant=params['variant'],
            workers=params['workers'],
        )
        row = [
            EXPERIMENT_MC,
            params['form'],
            params['variant'],
            params['phi'].token,
            result.repeats,
            result.covered,
            result.coverage,
            result.level,
            result.truth,
            result.mean_half_width,
            params['seed'],
        ]
        return self.render(params, MC_HEADER, row)

    def render(self, params, header, row):
        if params['format'] == 'json':
            return render_json(dict(zip(header, row)))
        return render_csv(header, [row])
