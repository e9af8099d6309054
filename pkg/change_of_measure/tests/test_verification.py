"""
Tests pour les balayages de vérification et les relations entre bornes.
"""
import math

from django.test import SimpleTestCase

from app.exceptions import BadParameter, PhiDomainError
from distributions.models import INFINITE, TestFunction
from distributions.services.distribution_service import expectation, variance
from distributions.utils import rng_for
from divergences.models import DivergenceKind, DivergenceTag
from divergences.services.divergence_service import f_divergence
from ..models import InequalityId, InequalityTag
from ..services.bound_service import hcr_gap_bound, upper_bound
from ..services.verification_service import phi_sampling_range, random_triple, verification_sweep

SOUNDNESS_TRIALS = 10_000
PEARSON = DivergenceKind(DivergenceTag.PEARSON_CHI2)


def close_to(test, first, second, tolerance=1e-12):
    test.assertAlmostEqual(first, second, delta=tolerance * max(1.0, abs(first), abs(second)))


class VerificationSweepTest(SimpleTestCase):
    """
    Tests pour verification_sweep.
    """

    def test_soundness_every_inequality(self):
        """Test aucune violation sur 10⁴ triplets pour chaque inégalité."""
        ids = {inequality.token: inequality for alpha in (1.5, 2.0, 3.0) for inequality in InequalityId.every(alpha)}
        for inequality in ids.values():
            with self.subTest(inequality=inequality.token):
                result = verification_sweep(inequality, SOUNDNESS_TRIALS, seed=1)
                self.assertEqual(result.trials, SOUNDNESS_TRIALS)
                self.assertEqual(result.violations, 0)

    def test_deterministic_across_workers(self):
        """Test mêmes rapports quel que soit le nombre de threads."""
        inequality = InequalityId(InequalityTag.KL_CONSTRAINED)
        single = verification_sweep(inequality, 200, seed=7)
        pooled = verification_sweep(inequality, 200, seed=7, workers=4)
        self.assertEqual(single.reports, pooled.reports)

    def test_phi_range_override(self):
        """Test intervalle imposé hors du domaine rejeté."""
        with self.assertRaises(PhiDomainError):
            verification_sweep(InequalityId(InequalityTag.TV_CONSTRAINED), 10, seed=0, phi_high=1.5)
        with self.assertRaises(PhiDomainError):
            phi_sampling_range(InequalityId(InequalityTag.REVERSE_KL_UNCONSTRAINED), phi_high=1.0)
        with self.assertRaises(BadParameter):
            phi_sampling_range(InequalityId(InequalityTag.KL_CONSTRAINED), phi_low=2.0, phi_high=1.0)
        self.assertEqual(
            phi_sampling_range(InequalityId(InequalityTag.TV_CONSTRAINED), phi_low=0.25), (0.25, 1.0)
        )

    def test_worst_slack(self):
        """Test marge minimale positive sans violation."""
        result = verification_sweep(InequalityId(InequalityTag.PEARSON_CHI2_CONSTRAINED), 100, seed=3)
        self.assertIsNot(result.worst_slack, INFINITE)
        self.assertGreaterEqual(result.worst_slack, -1e-9)


class BoundRelationsTest(SimpleTestCase):
    """
    Tests des relations entre inégalités sur des triplets aléatoires.
    """

    def setUp(self):
        """Configuration initiale."""
        self.rng = rng_for(2024)

    def triples(self, count=1000):
        for _ in range(count):
            q, p, phi = random_triple(self.rng, (-3.0, 3.0))
            if f_divergence(PEARSON, q, p) is not INFINITE:
                yield q, p, phi

    def test_constrained_tighter_by_mean_square(self):
        """Test rhs contrainte = rhs non contrainte - (E_P φ)²/4."""
        constrained = InequalityId(InequalityTag.PEARSON_CHI2_CONSTRAINED)
        unconstrained = InequalityId(InequalityTag.PEARSON_CHI2_UNCONSTRAINED)
        for q, p, phi in self.triples():
            mean = expectation(p, phi)
            close_to(
                self,
                upper_bound(constrained, q, p, phi),
                upper_bound(unconstrained, q, p, phi) - mean * mean / 4.0,
            )

    def test_log_moment_below_exp_moment(self):
        """Test log E_P[e^φ] ≤ E_P[e^φ] - 1."""
        constrained = InequalityId(InequalityTag.KL_CONSTRAINED)
        unconstrained = InequalityId(InequalityTag.KL_UNCONSTRAINED)
        for q, p, phi in self.triples():
            self.assertLessEqual(
                upper_bound(constrained, q, p, phi), upper_bound(unconstrained, q, p, phi) + 1e-12
            )

    def test_multiplicative_alpha_two_is_chi2(self):
        """Test MultiplicativeAlpha(2) = MultiplicativeChi2."""
        alpha_form = InequalityId(InequalityTag.MULTIPLICATIVE_ALPHA, 2.0)
        chi2_form = InequalityId(InequalityTag.MULTIPLICATIVE_CHI2)
        for q, p, phi in self.triples():
            close_to(self, upper_bound(alpha_form, q, p, phi), upper_bound(chi2_form, q, p, phi))

    def test_hcr_two_is_chi2_variance(self):
        """Test hcr_gap_bound(2) = √(χ² · Var_P[φ])."""
        for q, p, phi in self.triples():
            expected = math.sqrt(f_divergence(PEARSON, q, p) * variance(p, phi))
            close_to(self, hcr_gap_bound(2.0, q, p, phi), expected)
            close_to(self, upper_bound(InequalityId(InequalityTag.HCR_GENERALIZED, 2.0), q, p, phi), expected)

    def test_random_triple_absolutely_continuous(self):
        """Test Q nulle là où P est nulle."""
        for _ in range(500):
            q, p, phi = random_triple(self.rng, (0.0, 1.0), min_support=2, max_support=5)
            self.assertTrue(all(q.probs[p.probs == 0] == 0))
            self.assertIsInstance(phi, TestFunction)
            self.assertLessEqual(q.size, 5)
