"""
Tests pour les services de l'application distributions.
"""
import math

import numpy as np
from django.test import SimpleTestCase
from hypothesis import given, settings
from hypothesis import strategies as st

from app.exceptions import (
    EmptySupport,
    LengthMismatch,
    MassTooFar,
    NegativeMass,
    SupportMismatch,
    ZeroSamples,
)
from ..models import INFINITE, Gaussian1D, TestFunction
from ..services.distribution_service import (
    expectation,
    make_discrete,
    radon_nikodym,
    variance,
)
from ..services.gaussian_service import gaussian_gamma, sample_gaussian
from ..utils import random_probs, rng_for

finite_floats = st.floats(min_value=-10, max_value=10, allow_nan=False, allow_infinity=False)


class MakeDiscreteTest(SimpleTestCase):
    """
    Tests pour make_discrete.
    """

    def test_uniform_two_points(self):
        """Test [0.5, 0.5] donne la loi uniforme."""
        distribution = make_discrete([0.5, 0.5])
        np.testing.assert_array_equal(distribution.probs, [0.5, 0.5])
        self.assertEqual(distribution.labels, ('0', '1'))

    def test_already_normalized(self):
        """Test poids déjà normalisés conservés."""
        distribution = make_discrete([0.25, 0.75])
        np.testing.assert_array_equal(distribution.probs, [0.25, 0.75])

    def test_negative_mass(self):
        """Test entrée négative rejetée."""
        with self.assertRaises(NegativeMass):
            make_discrete([0.3, -0.1])

    def test_tiny_negative_clamped(self):
        """Test entrée dans [-1e-12, 0[ ramenée à 0."""
        distribution = make_discrete([1.0, -1e-13])
        self.assertEqual(distribution.probs[1], 0.0)

    def test_empty_support(self):
        """Test liste vide rejetée."""
        with self.assertRaises(EmptySupport):
            make_discrete([])

    def test_mass_too_far(self):
        """Test somme hors de [1 - 1e-6, 1 + 1e-6] rejetée."""
        with self.assertRaises(MassTooFar):
            make_discrete([0.5, 0.6])

    def test_renormalization(self):
        """Test renormalisation d'une somme à 1 + 5e-7."""
        distribution = make_discrete([0.5, 0.5000005])
        self.assertAlmostEqual(math.fsum(distribution.probs), 1.0, delta=1e-12)

    def test_labels_kept(self):
        """Test étiquettes fournies conservées."""
        distribution = make_discrete([0.5, 0.5], labels=['a', 'b'])
        self.assertEqual(distribution.labels, ('a', 'b'))

    @settings(max_examples=200, deadline=None)
    @given(st.lists(st.floats(min_value=0.0, max_value=1.0), min_size=1, max_size=20))
    def test_output_satisfies_invariants(self, weights):
        """Test toute sortie respecte les invariants d'une distribution."""
        total = math.fsum(weights)
        if total == 0:
            return
        distribution = make_discrete([w / total for w in weights])
        self.assertTrue(np.all(distribution.probs >= 0))
        self.assertLessEqual(abs(math.fsum(distribution.probs) - 1.0), 1e-9)


class ExpectationVarianceTest(SimpleTestCase):
    """
    Tests pour expectation et variance.
    """

    def test_expectation_uniform(self):
        """Test moyenne uniforme."""
        self.assertEqual(expectation(make_discrete([0.5, 0.5]), TestFunction([1, 0])), 0.5)

    def test_expectation_weighted(self):
        """Test somme pondérée."""
        self.assertEqual(expectation(make_discrete([0.25, 0.75]), TestFunction([1, 0])), 0.25)

    def test_expectation_point_mass(self):
        """Test masse de Dirac."""
        self.assertEqual(expectation(make_discrete([1.0]), TestFunction([3.7])), 3.7)

    def test_expectation_length_mismatch(self):
        """Test longueurs différentes rejetées."""
        with self.assertRaises(LengthMismatch):
            expectation(make_discrete([0.5, 0.5]), TestFunction([1, 0, 2]))

    def test_variance_two_points(self):
        """Test variance d'un Bernoulli(0.25)."""
        self.assertAlmostEqual(variance(make_discrete([0.25, 0.75]), TestFunction([1, 0])), 0.1875, delta=1e-15)

    def test_variance_constant(self):
        """Test variance nulle d'une constante."""
        self.assertEqual(variance(make_discrete([0.2, 0.3, 0.5]), TestFunction([4, 4, 4])), 0.0)

    def test_variance_symmetric(self):
        """Test variance de ±1 sous la loi uniforme."""
        self.assertEqual(variance(make_discrete([0.5, 0.5]), TestFunction([1, -1])), 1.0)

    @settings(max_examples=300, deadline=None)
    @given(
        st.integers(min_value=0, max_value=2**32 - 1),
        finite_floats,
        finite_floats,
    )
    def test_expectation_linear(self, seed, a, b):
        """Test linéarité de l'espérance."""
        rng = rng_for(seed)
        size = int(rng.integers(1, 17))
        distribution = make_discrete(random_probs(rng, size))
        phi = rng.uniform(-5, 5, size)
        psi = rng.uniform(-5, 5, size)
        combined = expectation(distribution, TestFunction(a * phi + b * psi))
        separate = a * expectation(distribution, TestFunction(phi)) + b * expectation(distribution, TestFunction(psi))
        self.assertAlmostEqual(combined, separate, delta=1e-12 * max(1.0, abs(a) + abs(b)) * 10)

    @settings(max_examples=300, deadline=None)
    @given(st.integers(min_value=0, max_value=2**32 - 1), finite_floats)
    def test_variance_shift_invariant(self, seed, shift):
        """Test invariance de la variance par translation."""
        rng = rng_for(seed)
        size = int(rng.integers(1, 17))
        distribution = make_discrete(random_probs(rng, size))
        phi = rng.uniform(-3, 3, size)
        self.assertAlmostEqual(
            variance(distribution, TestFunction(phi + shift)),
            variance(distribution, TestFunction(phi)),
            delta=1e-12,
        )


class RadonNikodymTest(SimpleTestCase):
    """
    Tests pour radon_nikodym.
    """

    def test_identical_measures(self):
        """Test rapport constant égal à 1."""
        p = make_discrete([0.5, 0.5])
        np.testing.assert_array_equal(radon_nikodym(p, p), [1.0, 1.0])

    def test_elementwise_ratio(self):
        """Test rapports (2, 2/3)."""
        ratio = radon_nikodym(make_discrete([0.5, 0.5]), make_discrete([0.25, 0.75]))
        np.testing.assert_allclose(ratio, [2.0, 2.0 / 3.0], rtol=1e-15)

    def test_not_absolutely_continuous(self):
        """Test marqueur INFINITE si Q n'est pas absolument continue."""
        self.assertIs(radon_nikodym(make_discrete([1, 0]), make_discrete([0, 1])), INFINITE)

    def test_zero_zero_convention(self):
        """Test q_i = p_i = 0 donne le rapport 1."""
        ratio = radon_nikodym(make_discrete([1, 0]), make_discrete([1, 0]))
        np.testing.assert_array_equal(ratio, [1.0, 1.0])

    def test_support_mismatch(self):
        """Test supports différents rejetés."""
        with self.assertRaises(SupportMismatch):
            radon_nikodym(make_discrete([0.5, 0.5]), make_discrete([0.2, 0.3, 0.5]))

    def test_ratio_integrates_to_one(self):
        """Test Σ p_i (q_i/p_i) = 1 sur des paires aléatoires."""
        rng = rng_for(3)
        for _ in range(500):
            size = int(rng.integers(2, 17))
            q = make_discrete(random_probs(rng, size, zero_fraction=0.2))
            p = make_discrete(random_probs(rng, size))
            ratio = radon_nikodym(q, p)
            self.assertAlmostEqual(math.fsum(ratio * p.probs), 1.0, delta=1e-12)


class GaussianServiceTest(SimpleTestCase):
    """
    Tests pour gaussian_gamma et sample_gaussian.
    """

    def test_gamma_values(self):
        """Test γ = 1/variance."""
        self.assertEqual(gaussian_gamma(Gaussian1D(0, 1)), 1.0)
        self.assertEqual(gaussian_gamma(Gaussian1D(3, 4)), 0.25)
        self.assertEqual(gaussian_gamma(Gaussian1D(0, 0.25)), 4.0)

    def test_sample_deterministic(self):
        """Test même graine, même échantillon."""
        first = sample_gaussian(Gaussian1D(0, 1), 3, seed=7)
        second = sample_gaussian(Gaussian1D(0, 1), 3, seed=7)
        np.testing.assert_array_equal(first, second)

    def test_sample_mean(self):
        """Test moyenne empirique à 0.02 de la vraie moyenne pour n = 10⁵."""
        samples = sample_gaussian(Gaussian1D(5, 1), 100_000, seed=1)
        self.assertLess(abs(samples.mean() - 5.0), 0.02)

    def test_zero_samples(self):
        """Test n = 0 rejeté."""
        with self.assertRaises(ZeroSamples):
            sample_gaussian(Gaussian1D(0, 1), 0, seed=1)
