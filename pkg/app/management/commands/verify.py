"""
Commande verify : vérification des inégalités de changement de mesure.
"""
import logging

from django.core.management.base import CommandError

from app.management.base import EXIT_VIOLATIONS, CertifCommand
from app.reporting import render_csv, render_json, rows_to_records
from change_of_measure.forms import VerifyForm
from change_of_measure.models import BoundReport, SweepResult
from change_of_measure.services.bound_service import verify
from change_of_measure.services.verification_service import verification_sweep
from distributions.models import TestFunction
from distributions.services.distribution_service import make_discrete
from distributions.utils import load_distribution, load_test_function

logger = logging.getLogger(__name__)

HEADER = ['inequality', 'trial', 'seed', 'lhs', 'rhs', 'slack', 'holds']


class Command(CertifCommand):
    help = "Vérifie une inégalité de changement de mesure (ou toutes) sur des triplets (Q, P, φ)"
    form_class = VerifyForm

    def add_command_arguments(self, parser):
        parser.add_argument(
            '--inequality',
            help="Jeton d'inégalité (kl-constrained, hcr-generalized:1.5, ...) ou all",
        )
        parser.add_argument('--alpha', type=float, help="α des inégalités paramétrées pour --inequality all")
        parser.add_argument('--trials', type=int, help="Nombre de triplets aléatoires par inégalité")
        parser.add_argument('--workers', type=int, help="Nombre de threads")
        parser.add_argument('--min-support', dest='min_support', type=int)
        parser.add_argument('--max-support', dest='max_support', type=int)
        parser.add_argument('--phi-low', dest='phi_low', type=float, help="Borne basse imposée pour φ")
        parser.add_argument('--phi-high', dest='phi_high', type=float, help="Borne haute imposée pour φ")
        parser.add_argument('--q', help="Fichier de distribution Q")
        parser.add_argument('--p', help="Fichier de distribution P")
        parser.add_argument('--phi', help="Fichier de fonction test")

    def run(self, params):
        if params.get('q'):
            results = [self.verify_files(inequality, params) for inequality in params['inequality']]
        else:
            results = [
                verification_sweep(
                    inequality,
                    params['trials'],
                    params['seed'],
                    workers=params['workers'],
                    phi_low=params.get('phi_low'),
                    phi_high=params.get('phi_high'),
                    min_support=params['min_support'],
                    max_support=params['max_support'],
                )
                for inequality in params['inequality']
            ]

        self.violations = 0
        rows = []
        for result in results:
            self.violations += result.violations
            self.stderr.write(
                f"{result.inequality.token} : {result.violations} violation(s) sur {result.trials} essai(s)"
            )
            for index, report in enumerate(result.reports):
                rows.append([
                    result.inequality.token,
                    index,
                    result.seed + index,
                    report.lhs,
                    report.rhs,
                    report.slack,
                    report.holds,
                ])

        if params['format'] == 'json':
            return render_json({
                'seed': params['seed'],
                'violations': self.violations,
                'reports': rows_to_records(HEADER, rows),
            })
        return render_csv(HEADER, rows)

    def verify_files(self, inequality, params) -> SweepResult:
        q_probs, q_labels = load_distribution(params['q'])
        p_probs, p_labels = load_distribution(params['p'])
        q = make_discrete(q_probs, q_labels or None)
        p = make_discrete(p_probs, p_labels or None)
        phi = TestFunction(load_test_function(params['phi']))
        report: BoundReport = verify(inequality, q, p, phi)
        return SweepResult(inequality=inequality, seed=params['seed'], reports=(report,))

    def after_output(self):
        if self.violations:
            logger.warning(f"{self.violations} violation(s) détectée(s)")
            raise CommandError(f"{self.violations} violation(s)", returncode=EXIT_VIOLATIONS)
