"""
Tests pour les termes de complexité PAC-Bayésiens.
"""
import math

from django.test import SimpleTestCase
from hypothesis import given, settings
from hypothesis import strategies as st

from app.exceptions import BadParameter
from distributions.models import INFINITE
from ..constants import REGIME_GAUSSIAN, REGIME_SMALL_M
from ..models import AddendForm, LossClass, LossTag, PacInput
from ..services.bound_service import (
    addend,
    addend_additive,
    addend_chi2_absolute,
    addend_chi2_additive,
    addend_chi2_multiplicative,
    addend_multiplicative,
    scale_term,
    subexp_K1,
    subexp_regime,
)

LOSS_CLASSES = [
    LossClass.bounded(1.0),
    LossClass.sub_gaussian(0.7),
    LossClass.sub_exponential(1.0, 1.0),
    LossClass.bounded_variance(2.0),
]


class LossClassTest(SimpleTestCase):
    """
    Tests pour LossClass et PacInput.
    """

    def test_parse(self):
        """Test lecture des jetons."""
        self.assertEqual(LossClass.parse('bounded:1'), LossClass.bounded(1.0))
        self.assertEqual(LossClass.parse('sub-exponential:1,2').beta, 2.0)
        for loss in LOSS_CLASSES:
            self.assertEqual(LossClass.parse(loss.token), loss)

    def test_invalid_tokens(self):
        """Test paramètres manquants, négatifs ou en trop."""
        for token in ('bounded', 'bounded:-1', 'sub-exponential:1', 'sub-gaussian:1,1', 'huber:1', 'bounded:x'):
            with self.assertRaises(BadParameter):
                LossClass.parse(token)

    def test_pac_input_validation(self):
        """Test δ, α, m et divergence invalides."""
        with self.assertRaises(BadParameter):
            PacInput(m=100, delta=1.5, alpha=2.0, div=0.0)
        with self.assertRaises(BadParameter):
            PacInput(m=100, delta=0.05, alpha=1.0, div=0.0)
        with self.assertRaises(BadParameter):
            PacInput(m=0, delta=0.05, alpha=2.0, div=0.0)
        with self.assertRaises(BadParameter):
            PacInput(m=100, delta=0.05, alpha=2.0, div=-0.1)
        self.assertIs(PacInput(m=10, delta=0.5, alpha=2.0, div=INFINITE).div, INFINITE)


class AddendTest(SimpleTestCase):
    """
    Tests pour addend_multiplicative et addend_additive.
    """

    def test_bounded_multiplicative_example(self):
        """Test √((1/200)·log 40) = 0.135810."""
        pac = PacInput(m=100, delta=0.05, alpha=2.0, div=0.0)
        value = addend_multiplicative(LossClass.bounded(1.0), pac)
        self.assertAlmostEqual(value, math.sqrt(0.5 * math.log(40) / 100), delta=1e-15)
        self.assertAlmostEqual(value, 0.135810, places=6)

    def test_bounded_variance_multiplicative_example(self):
        """Test √(1/(100·0.1)) = 0.316228."""
        pac = PacInput(m=100, delta=0.1, alpha=2.0, div=0.0)
        self.assertAlmostEqual(addend_multiplicative(LossClass.bounded_variance(1.0), pac), 0.316228, places=6)

    def test_bounded_additive_example(self):
        """Test √(0.005 + (1/200)·(0.5·log 40)²) = 0.148354."""
        pac = PacInput(m=100, delta=0.05, alpha=2.0, div=0.0)
        value = addend_additive(LossClass.bounded(1.0), pac)
        self.assertAlmostEqual(value, 0.148354, places=6)
        self.assertEqual(addend(LossClass.bounded(1.0), pac, AddendForm.ADDITIVE), value)

    def test_zero_divergence_independent_of_alpha(self):
        """Test div = 0 : terme multiplicatif indépendant de α."""
        for loss in LOSS_CLASSES:
            values = [
                addend_multiplicative(loss, PacInput(m=50, delta=0.1, alpha=alpha, div=0.0))
                for alpha in (1.1, 2.0, 5.0)
            ]
            self.assertAlmostEqual(min(values), max(values), delta=1e-15)

    def test_infinite_divergence(self):
        """Test divergence infinie : terme INFINITE."""
        pac = PacInput(m=100, delta=0.05, alpha=2.0, div=INFINITE)
        for loss in LOSS_CLASSES:
            self.assertIs(addend_multiplicative(loss, pac), INFINITE)
            self.assertIs(addend_additive(loss, pac), INFINITE)
        self.assertIs(addend_chi2_multiplicative(LossClass.bounded(1.0), 10, 0.1, INFINITE), INFINITE)

    def test_growth_with_divergence(self):
        """Test √(div/m) pour la forme additive, div^{1/2α}/√m pour la multiplicative."""
        loss = LossClass.bounded(1.0)
        small = PacInput(m=100, delta=0.05, alpha=2.0, div=1e6)
        large = PacInput(m=100, delta=0.05, alpha=2.0, div=1e8)
        self.assertAlmostEqual(addend_additive(loss, large) / addend_additive(loss, small), 10.0, delta=1e-3)
        ratio = addend_multiplicative(loss, large) / addend_multiplicative(loss, small)
        self.assertAlmostEqual(ratio, 100 ** 0.25, delta=1e-3)

    def test_alpha_two_matches_chi2_displays(self):
        """Test α = 2 et D₂ = χ²/2 : formes χ² retrouvées."""
        for loss in LOSS_CLASSES:
            for chi2 in (0.0, 0.3, 1.0, 7.5, 120.0):
                pac = PacInput(m=64, delta=0.05, alpha=2.0, div=chi2 / 2.0)
                expected = addend_chi2_multiplicative(loss, 64, 0.05, chi2)
                self.assertAlmostEqual(addend_multiplicative(loss, pac), expected, delta=1e-12 * max(1.0, expected))
                expected = addend_chi2_additive(loss, 64, 0.05, chi2)
                self.assertAlmostEqual(addend_additive(loss, pac), expected, delta=1e-12 * max(1.0, expected))

    @given(st.floats(min_value=1e-6, max_value=1e6), st.sampled_from(LOSS_CLASSES))
    def test_chi2_tighter_than_absolute(self, chi2, loss):
        """Test √(X/m·√(χ²+1)) ≤ √(X/m·(χ²+1))."""
        self.assertLessEqual(
            addend_chi2_multiplicative(loss, 100, 0.05, chi2),
            addend_chi2_absolute(loss, 100, 0.05, chi2) + 1e-12,
        )


class MonotonicityTest(SimpleTestCase):
    """
    Tests de monotonie des termes en δ, m et divergence.
    """

    @settings(max_examples=300)
    @given(
        st.sampled_from(LOSS_CLASSES),
        st.sampled_from(list(AddendForm)),
        st.floats(min_value=1e-4, max_value=0.99),
        st.floats(min_value=1e-4, max_value=0.99),
        st.floats(min_value=1.05, max_value=6.0),
        st.floats(min_value=0.0, max_value=50.0),
    )
    def test_non_increasing_in_delta(self, loss, form, delta_a, delta_b, alpha, div):
        """Test terme non croissant en δ."""
        low, high = sorted((delta_a, delta_b))
        at_low = addend(loss, PacInput(m=200, delta=low, alpha=alpha, div=div), form)
        at_high = addend(loss, PacInput(m=200, delta=high, alpha=alpha, div=div), form)
        self.assertGreaterEqual(at_low, at_high * (1 - 1e-12))

    @settings(max_examples=300)
    @given(
        st.sampled_from(LOSS_CLASSES),
        st.sampled_from(list(AddendForm)),
        st.integers(min_value=1, max_value=10_000),
        st.integers(min_value=1, max_value=10_000),
        st.floats(min_value=1.05, max_value=6.0),
        st.floats(min_value=0.0, max_value=50.0),
    )
    def test_non_increasing_in_m(self, loss, form, m_a, m_b, alpha, div):
        """Test terme non croissant en m dans un même régime de K¹_δ."""
        low, high = sorted((m_a, m_b))
        if loss.tag == LossTag.SUB_EXPONENTIAL:
            if subexp_regime(loss.param, loss.beta, low, 0.05) != subexp_regime(loss.param, loss.beta, high, 0.05):
                return
        at_low = addend(loss, PacInput(m=low, delta=0.05, alpha=alpha, div=div), form)
        at_high = addend(loss, PacInput(m=high, delta=0.05, alpha=alpha, div=div), form)
        self.assertGreaterEqual(at_low, at_high * (1 - 1e-12))

    @settings(max_examples=300)
    @given(
        st.sampled_from(LOSS_CLASSES),
        st.sampled_from(list(AddendForm)),
        st.floats(min_value=0.0, max_value=1e3),
        st.floats(min_value=0.0, max_value=1e3),
        st.floats(min_value=1.05, max_value=6.0),
    )
    def test_non_decreasing_in_divergence(self, loss, form, div_a, div_b, alpha):
        """Test terme non décroissant en divergence."""
        low, high = sorted((div_a, div_b))
        at_low = addend(loss, PacInput(m=100, delta=0.05, alpha=alpha, div=low), form)
        at_high = addend(loss, PacInput(m=100, delta=0.05, alpha=alpha, div=high), form)
        self.assertLessEqual(at_low, at_high * (1 + 1e-12))


class SubExponentialTest(SimpleTestCase):
    """
    Tests pour subexp_K1 et scale_term.
    """

    def test_gaussian_regime_example(self):
        """Test σ = β = 1, m = 100, δ = 0.05 : 2·log 40/100 = 0.0737776."""
        self.assertAlmostEqual(subexp_K1(1.0, 1.0, 100, 0.05), 0.0737776, places=7)
        self.assertEqual(subexp_regime(1.0, 1.0, 100, 0.05), REGIME_GAUSSIAN)

    def test_small_m_regime_example(self):
        """Test σ = β = 1, m = 4, δ = 0.05 : (2·log 40/4)² = 3.401963."""
        self.assertAlmostEqual(subexp_K1(1.0, 1.0, 4, 0.05), 3.401963, places=6)
        self.assertEqual(subexp_regime(1.0, 1.0, 4, 0.05), REGIME_SMALL_M)

    def test_boundary_goes_to_gaussian(self):
        """Test m = m* : régime gaussien."""
        # m* = 2β²·log(2/δ)/σ² avec σ² = 2β²·log(2/δ)/8, donc m* = 8 à l'arrondi près
        log_term = math.log(2 / 0.05)
        sigma = math.sqrt(2 * log_term / 8)
        threshold = 2 * log_term / sigma ** 2
        self.assertEqual(
            subexp_regime(sigma, 1.0, math.ceil(threshold), 0.05), REGIME_GAUSSIAN
        )

    def test_invalid_parameters(self):
        """Test δ, m, σ ou β invalides."""
        with self.assertRaises(BadParameter):
            subexp_K1(1.0, 1.0, 100, 1.5)
        with self.assertRaises(BadParameter):
            subexp_K1(1.0, 0.0, 100, 0.05)
        with self.assertRaises(BadParameter):
            scale_term(LossClass.bounded(1.0), 0, 0.05)

    def test_scale_terms(self):
        """Test facteur X de chaque classe."""
        log_term = math.log(2 / 0.05)
        self.assertAlmostEqual(scale_term(LossClass.bounded(2.0), 10, 0.05), 2.0 * log_term, delta=1e-15)
        self.assertAlmostEqual(scale_term(LossClass.sub_gaussian(1.0), 10, 0.05), 2.0 * log_term, delta=1e-15)
        self.assertAlmostEqual(scale_term(LossClass.bounded_variance(3.0), 10, 0.05), 60.0, delta=1e-12)
        self.assertAlmostEqual(
            scale_term(LossClass.sub_exponential(1.0, 1.0), 100, 0.05), 100 * subexp_K1(1.0, 1.0, 100, 0.05)
        )
