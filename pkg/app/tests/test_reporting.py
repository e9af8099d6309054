"""
Tests pour la mise en forme des résultats et la correspondance des codes de sortie.
"""
import json
import math

from django.test import SimpleTestCase

from app.exceptions import (
    EXIT_INTERNAL,
    EXIT_IO,
    EXIT_VALIDATION,
    BadParameter,
    NoConvergence,
    PhiDomainError,
    exit_code_for,
)
from app.reporting import format_number, render_csv, render_json, rows_to_records
from distributions.models import INFINITE


class FormatNumberTest(SimpleTestCase):
    """
    Tests pour format_number.
    """

    def test_round_trip(self):
        """Test 17 chiffres significatifs relus sans perte."""
        for value in (1 / 3, math.pi, 1e-300, -2.5e17, 0.1 + 0.2):
            self.assertEqual(float(format_number(value)), value)

    def test_special_values(self):
        """Test INFINITE, booléens, entiers et chaînes."""
        self.assertEqual(format_number(INFINITE), 'inf')
        self.assertEqual(format_number(float('-inf')), '-inf')
        self.assertEqual(format_number(True), 'true')
        self.assertEqual(format_number(12), '12')
        self.assertEqual(format_number('kl'), 'kl')


class RenderTest(SimpleTestCase):
    """
    Tests pour render_csv et render_json.
    """

    def test_csv(self):
        """Test en-tête, fins de ligne '\\n' et valeurs formatées."""
        text = render_csv(['a', 'b'], [[1, 0.5], [INFINITE, False]])
        self.assertEqual(text, "a,b\n1,0.5\ninf,false\n")

    def test_json(self):
        """Test JSON valide, INFINITE en « inf », ordre des clés conservé."""
        text = render_json({'seed': 3, 'rows': rows_to_records(['x'], [[INFINITE], [0.25]])})
        self.assertTrue(text.endswith('\n'))
        self.assertEqual(json.loads(text), {'seed': 3, 'rows': [{'x': 'inf'}, {'x': 0.25}]})
        self.assertLess(text.index('seed'), text.index('rows'))


class ExitCodeMapTest(SimpleTestCase):
    """
    Tests pour exit_code_for.
    """

    def test_map(self):
        """Test validation 2, entrée/sortie 3, interne 4."""
        self.assertEqual(exit_code_for(BadParameter('x')), EXIT_VALIDATION)
        self.assertEqual(exit_code_for(PhiDomainError('x')), EXIT_VALIDATION)
        self.assertEqual(exit_code_for(FileNotFoundError('x')), EXIT_IO)
        self.assertEqual(exit_code_for(json.JSONDecodeError('x', '', 0)), EXIT_IO)
        self.assertEqual(exit_code_for(NoConvergence('x')), EXIT_INTERNAL)
        self.assertEqual(exit_code_for(KeyError('x')), EXIT_INTERNAL)
