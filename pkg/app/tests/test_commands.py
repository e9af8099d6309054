"""
Tests des commandes de management : paramètres, sorties et codes de retour.
"""
import csv
import io
import json
import math
import shutil
import tempfile
from pathlib import Path
from unittest.mock import patch

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

from app.exceptions import EXIT_INTERNAL, EXIT_IO, EXIT_VALIDATION
from app.management.base import EXIT_VIOLATIONS, read_config_file
from change_of_measure.models import BoundReport
from pac_bayes.models import LossClass, PacInput
from pac_bayes.services.bound_service import addend_multiplicative


def run_command(name, *args, **options):
    out, err = io.StringIO(), io.StringIO()
    call_command(name, *args, stdout=out, stderr=err, **options)
    return out.getvalue(), err.getvalue()


def csv_rows(text):
    return list(csv.DictReader(io.StringIO(text)))


class CommandTestCase(SimpleTestCase):
    """
    Répertoire temporaire pour les fichiers d'entrée.
    """

    def setUp(self):
        """Configuration initiale."""
        self.directory = Path(tempfile.mkdtemp())
        self.addCleanup(shutil.rmtree, self.directory)

    def write(self, name, content):
        path = self.directory / name
        path.write_text(content, encoding='utf-8')
        return str(path)

    def write_json(self, name, payload):
        return self.write(name, json.dumps(payload))

    def assertExitCode(self, code, name, *args, **options):
        with self.assertLogs('app', level='ERROR'):
            with self.assertRaises(CommandError) as context:
                run_command(name, *args, **options)
        self.assertEqual(context.exception.returncode, code)


class ConfigFileTest(CommandTestCase):
    """
    Tests pour read_config_file et la fusion des paramètres.
    """

    def test_read_config_file(self):
        """Test commentaires, lignes vides et tirets convertis."""
        path = self.write('run.cfg', "# essai\n\ntrials = 20\nmin-support=3\n")
        self.assertEqual(read_config_file(path), {'trials': '20', 'min_support': '3'})

    def test_flags_override_file(self):
        """Test option de ligne de commande prioritaire sur le fichier."""
        path = self.write('run.cfg', "m=50\nloss=bounded:2\n")
        out, _err = run_command('pac_table', config=path, m='100')
        rows = csv_rows(out)
        self.assertEqual(rows[0]['m'], '100')
        self.assertEqual(rows[0]['loss_class'], 'bounded:2.0')

    def test_unknown_key(self):
        """Test clé inconnue : code 2."""
        path = self.write('run.cfg', "colour=blue\n")
        self.assertExitCode(EXIT_VALIDATION, 'pac_table', config=path)

    def test_line_without_equal_sign(self):
        """Test ligne sans '=' : code 2."""
        path = self.write('run.cfg', "trials\n")
        self.assertExitCode(EXIT_VALIDATION, 'verify', config=path)

    def test_missing_config_file(self):
        """Test fichier absent : code 3."""
        self.assertExitCode(EXIT_IO, 'pac_table', config=str(self.directory / 'absent.cfg'))


class DivergenceCommandTest(CommandTestCase):
    """
    Tests pour la commande divergence.
    """

    def setUp(self):
        """Configuration initiale."""
        super().setUp()
        self.q = self.write_json('q.json', {'probs': [0.5, 0.5]})
        self.p = self.write_json('p.json', {'probs': [0.25, 0.75]})

    def test_pearson_example(self):
        """Test pearson-chi2, Q = (0.5, 0.5), P = (0.25, 0.75) : 1/3."""
        out, _err = run_command('divergence', kind='pearson-chi2', q=self.q, p=self.p, seed=4)
        row = csv_rows(out)[0]
        self.assertAlmostEqual(float(row['value']), 1 / 3, delta=1e-12)
        self.assertEqual(row['seed'], '4')

    def test_identical_kl_json(self):
        """Test kl, Q = P : 0.0 en JSON avec la graine."""
        out, _err = run_command('divergence', kind='kl', q=self.q, p=self.q, format='json')
        payload = json.loads(out)
        self.assertEqual(payload['value'], 0.0)
        self.assertIn('seed', payload)

    def test_infinite_value(self):
        """Test divergence infinie sérialisée « inf »."""
        q = self.write_json('point.json', {'probs': [1.0, 0.0]})
        p = self.write_json('other.json', {'probs': [0.0, 1.0]})
        out, _err = run_command('divergence', kind='kl', q=q, p=p, format='json')
        self.assertEqual(json.loads(out)['value'], 'inf')

    def test_malformed_file(self):
        """Test fichier de probabilités mal formé : code 3."""
        broken = self.write('broken.json', "{probs: [0.5")
        self.assertExitCode(EXIT_IO, 'divergence', kind='kl', q=broken, p=self.p)

    def test_invalid_kind_and_mass(self):
        """Test type inconnu ou masse négative : code 2."""
        self.assertExitCode(EXIT_VALIDATION, 'divergence', kind='hamming', q=self.q, p=self.p)
        negative = self.write_json('negative.json', {'probs': [1.5, -0.5]})
        self.assertExitCode(EXIT_VALIDATION, 'divergence', kind='kl', q=negative, p=self.p)


class VerifyCommandTest(CommandTestCase):
    """
    Tests pour la commande verify.
    """

    def test_random_sweep(self):
        """Test kl-constrained, 500 triplets : aucune violation, une ligne par essai."""
        out, err = run_command('verify', inequality='kl-constrained', trials=500, seed=1)
        rows = csv_rows(out)
        self.assertEqual(len(rows), 500)
        self.assertTrue(all(row['holds'] == 'true' for row in rows))
        self.assertEqual(rows[3]['seed'], '4')
        self.assertIn('0 violation', err)

    def test_deterministic_output(self):
        """Test même graine : sortie identique octet pour octet."""
        first, _err = run_command('verify', inequality='all', trials=20, seed=5, workers=2)
        second, _err = run_command('verify', inequality='all', trials=20, seed=5)
        self.assertEqual(first, second)
        self.assertEqual(len(csv_rows(first)), 13 * 20)

    def test_phi_range_outside_domain(self):
        """Test tv-constrained avec φ imposée hors de [0, 1] : code 2."""
        self.assertExitCode(EXIT_VALIDATION, 'verify', inequality='tv-constrained', trials=5, phi_high=1.5)

    def test_bad_inequality(self):
        """Test jeton inconnu : code 2."""
        self.assertExitCode(EXIT_VALIDATION, 'verify', inequality='kl')

    def test_files_mode(self):
        """Test triplet donné par fichiers : rhs 1/3 + 0.25 + 0.046875, code 0."""
        q = self.write_json('q.json', {'probs': [0.5, 0.5]})
        p = self.write_json('p.json', {'probs': [0.25, 0.75]})
        phi = self.write_json('phi.json', {'values': [1.0, 0.0]})
        out, _err = run_command('verify', inequality='pearson-chi2-constrained', q=q, p=p, phi=phi, format='json')
        payload = json.loads(out)
        self.assertEqual(payload['violations'], 0)
        self.assertAlmostEqual(payload['reports'][0]['rhs'], 1 / 3 + 0.25 + 0.046875, delta=1e-12)

    def test_violation_exit_code(self):
        """Test rapport en violation : code 1 après écriture de la sortie."""
        q = self.write_json('q.json', {'probs': [0.5, 0.5]})
        phi = self.write_json('phi.json', {'values': [1.0, 0.0]})
        failing = BoundReport.from_sides(1.0, 0.5)
        with patch('app.management.commands.verify.verify', return_value=failing):
            with self.assertLogs('app', level='WARNING'):
                with self.assertRaises(CommandError) as context:
                    run_command('verify', inequality='kl-constrained', q=q, p=q, phi=phi)
        self.assertEqual(context.exception.returncode, EXIT_VIOLATIONS)


class PacTableCommandTest(CommandTestCase):
    """
    Tests pour la commande pac_table.
    """

    def test_bounded_example(self):
        """Test R = 1, m = 100, δ = 0.05, α = 2, div = 0 : 0.135810 et 0.148354."""
        out, _err = run_command('pac_table', loss='bounded:1', m='100', delta='0.05', alpha='2', div='0')
        row = csv_rows(out)[0]
        self.assertAlmostEqual(float(row['multiplicative']), 0.135810, places=6)
        self.assertAlmostEqual(float(row['additive']), 0.148354, places=6)
        self.assertEqual(row['regime'], '')

    def test_sub_exponential_regime(self):
        """Test σ = β = 1, m = 4, δ = 0.05 : régime petit m."""
        out, _err = run_command('pac_table', loss='sub-exponential:1,1', m='4,100', delta='0.05')
        rows = csv_rows(out)
        self.assertEqual([row['regime'] for row in rows], ['small-m', 'gaussian'])

    def test_grid_and_infinite_divergence(self):
        """Test grille 2 × 2 × 1 × 2 et divergence infinie."""
        out, _err = run_command('pac_table', m='50,100', delta='0.05,0.1', div='1,inf', format='json')
        rows = json.loads(out)['rows']
        self.assertEqual(len(rows), 8)
        self.assertEqual(rows[1]['multiplicative'], 'inf')

    def test_numbers_round_trip(self):
        """Test 17 chiffres significatifs : relecture exacte de la valeur calculée."""
        out, _err = run_command('pac_table', loss='bounded-variance:3', m='7', delta='0.3', alpha='1.7', div='2.5')
        row = csv_rows(out)[0]
        expected = addend_multiplicative(LossClass.bounded_variance(3.0), PacInput(m=7, delta=0.3, alpha=1.7, div=2.5))
        self.assertEqual(float(row['multiplicative']), expected)

    def test_invalid_delta(self):
        """Test δ = 1.5 : code 2."""
        self.assertExitCode(EXIT_VALIDATION, 'pac_table', delta='1.5')


class McCertifyCommandTest(CommandTestCase):
    """
    Tests pour la commande mc_certify.
    """

    def setUp(self):
        """Configuration initiale."""
        super().setUp()
        self.values = [0.25, -0.5, 1.0, 0.75]
        self.samples = self.write('samples.csv', '\n'.join(str(value) for value in self.values) + '\n')

    def test_kl_interval(self):
        """Test forme KL énoncée : estimation et demi-largeur terme à terme."""
        out, _err = run_command(
            'mc_certify', form='kl', L=1.0, gamma=1.0, delta=0.05, div='0.125', samples=self.samples,
            variant='printed', format='json',
        )
        payload = json.loads(out)
        self.assertEqual(payload['n'], 4)
        self.assertAlmostEqual(payload['estimate'], 0.375, delta=1e-15)
        expected = 4 * math.log(40) / 4 + 0.125 + 1 / 4
        self.assertAlmostEqual(payload['half_width'], expected, delta=1e-12)
        self.assertAlmostEqual(payload['low'], 0.375 - expected, delta=1e-12)

    def test_config_file(self):
        """Test paramètres lus dans un fichier key=value."""
        path = self.write('certify.cfg', f"form=chi2\nL=1\ngamma=1\ndiv=0\nsamples={self.samples}\n")
        out, _err = run_command('mc_certify', config=path)
        row = csv_rows(out)[0]
        self.assertEqual(row['form'], 'chi2')
        self.assertEqual(row['variant'], 'sound')
        self.assertEqual(float(row['bias_term']), 0.0)

    def test_lipschitz_violation(self):
        """Test φ = 5x déclarée 1-lipschitzienne : code 2."""
        with self.assertLogs('mc_certify', level='WARNING'):
            self.assertExitCode(
                EXIT_VALIDATION, 'mc_certify', L=1.0, gamma=1.0, div='0', samples=self.samples, phi='affine:5,0'
            )

    def test_sample_count_mismatch(self):
        """Test n différent du nombre d'échantillons : code 2."""
        self.assertExitCode(EXIT_VALIDATION, 'mc_certify', L=1.0, gamma=1.0, div='0', samples=self.samples, n=10)

    def test_unreadable_samples(self):
        """Test ligne non numérique : code 3."""
        broken = self.write('broken.csv', "0.5\nabc\n")
        self.assertExitCode(EXIT_IO, 'mc_certify', L=1.0, gamma=1.0, div='0', samples=broken)


class CoverageCommandTest(CommandTestCase):
    """
    Tests pour la commande coverage.
    """

    def test_pac_experiment(self):
        """Test expérience PAC-Bayes par défaut."""
        out, _err = run_command('coverage', trials=50, m=50, hypotheses=5, seed=2)
        row = csv_rows(out)[0]
        self.assertEqual(row['experiment'], 'pac')
        self.assertEqual(row['loss_class'], 'bounded:1.0')
        self.assertEqual(row['trials'], '50')

    def test_mc_experiment_from_config(self):
        """Test expérience Monte-Carlo décrite par un fichier de configuration."""
        path = self.write('mc.cfg', "experiment=mc\nform=chi2\nn=100\nrepeats=20\nformat=json\n")
        out, _err = run_command('coverage', config=path, seed=3)
        payload = json.loads(out)
        self.assertEqual(payload['experiment'], 'mc')
        self.assertEqual(payload['repeats'], 20)
        self.assertEqual(payload['truth'], 0.5)
        self.assertEqual(payload['seed'], 3)

    def test_deterministic(self):
        """Test même graine : sortie identique."""
        first, _err = run_command('coverage', experiment='mc', n=50, repeats=10, seed=8)
        second, _err = run_command('coverage', experiment='mc', n=50, repeats=10, seed=8, workers=2)
        self.assertEqual(first, second)

    def test_foreign_option(self):
        """Test option de l'autre expérience : code 2."""
        self.assertExitCode(EXIT_VALIDATION, 'coverage', experiment='mc', trials=10)
        self.assertExitCode(EXIT_VALIDATION, 'coverage', experiment='qmc')

    def test_model_mismatch(self):
        """Test classe de perte non certifiée par le modèle : code 2."""
        self.assertExitCode(EXIT_VALIDATION, 'coverage', model='gaussian', loss='bounded:1', trials=5)


class ExitCodeTest(CommandTestCase):
    """
    Tests de la correspondance exceptions / codes de sortie.
    """

    def test_internal_error(self):
        """Test exception imprévue : code 4."""
        with patch('app.management.commands.pac_table.addend_multiplicative', side_effect=RuntimeError('panne')):
            self.assertExitCode(EXIT_INTERNAL, 'pac_table')

    def test_output_file(self):
        """Test --output : fichier écrit, sortie standard vide."""
        target = self.directory / 'table.csv'
        out, _err = run_command('pac_table', output=str(target))
        self.assertEqual(out, '')
        self.assertTrue(target.read_text(encoding='utf-8').startswith('loss_class,'))
