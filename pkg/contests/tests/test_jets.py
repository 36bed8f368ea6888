import math

import numpy as np
from django.test import SimpleTestCase
from hypothesis import given, strategies as st

from contests.services.errors import JetDivisionError
from contests.services.jets import SeriesJet, exp


class SeriesJetArithmeticTests(SimpleTestCase):

    @given(st.floats(min_value=-5, max_value=5, allow_nan=False))
    def test_square_derivatives(self, x0):
        x = SeriesJet.variable(x0, 4)
        derivatives = (x * x).derivatives()
        np.testing.assert_allclose(derivatives, [x0 ** 2, 2 * x0, 2.0, 0.0, 0.0], atol=1e-10)

    @given(st.floats(min_value=0.1, max_value=4))
    def test_reciprocal_derivatives(self, x0):
        derivatives = (1.0 / SeriesJet.variable(x0, 5)).derivatives()
        expected = [(-1) ** j * math.factorial(j) / x0 ** (j + 1) for j in range(6)]
        np.testing.assert_allclose(derivatives, expected, rtol=1e-10)

    @given(st.floats(min_value=-2, max_value=2), st.floats(min_value=1.1, max_value=5))
    def test_power_derivatives(self, x0, base):
        derivatives = exp(SeriesJet.variable(x0, 4) * math.log(base)).derivatives()
        expected = [math.log(base) ** j * base ** x0 for j in range(5)]
        np.testing.assert_allclose(derivatives, expected, rtol=1e-10)

    def test_polynomial_is_exact_up_to_order(self):
        x = SeriesJet.variable(1.5, 3)
        cubic = x * x * x - 2 * x + 1
        np.testing.assert_allclose(cubic.derivatives(), [1.5 ** 3 - 3 + 1, 3 * 1.5 ** 2 - 2, 9.0, 6.0])

    def test_division_recovers_factor(self):
        x = SeriesJet.variable(0.7, 4)
        product = (x * x + 1) * (x - 3)
        np.testing.assert_allclose((product / (x - 3)).coefficients, (x * x + 1).coefficients, atol=1e-12)

    def test_division_by_zero_constant_raises(self):
        with self.assertRaises(JetDivisionError):
            SeriesJet.variable(2.0, 3) / SeriesJet.variable(0.0, 3)

    def test_derivative_drops_order(self):
        x = SeriesJet.variable(2.0, 3)
        slope = (x * x).derivative()
        self.assertEqual(slope.order, 2)
        self.assertAlmostEqual(float(slope.value), 4.0)

    def test_batched_jet_matches_scalar_jets(self):
        points = np.array([0.2, 0.5, 0.9])
        batched = (1.0 / SeriesJet.variable(points, 3) - 1.0) * SeriesJet.variable(points, 3)
        for k, x0 in enumerate(points):
            scalar = (1.0 / SeriesJet.variable(x0, 3) - 1.0) * SeriesJet.variable(x0, 3)
            np.testing.assert_allclose(batched.coefficients[:, k], scalar.coefficients, atol=1e-14)

    def test_mismatched_orders_truncate_to_lower(self):
        product = SeriesJet.variable(1.0, 5) * SeriesJet.variable(1.0, 2)
        self.assertEqual(product.order, 2)

    def test_empty_jet_rejected(self):
        with self.assertRaises(ValueError):
            SeriesJet(np.array([]))
