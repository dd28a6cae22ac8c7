"""
This work is licensed under CC BY-NC 4.0 International.

This document is part of the KiteCC central-configuration toolkit.
"""

"""
Mass coefficients and the masses they determine
"""

import math
import unittest

import numpy as np
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from kite_errors import DegenerateGeometry, InvalidMasses, SingularDenominator
from core_modules.angles_domain import AnglePair, ConfigKind, CriticalLine
from core_modules.mass_model import (
    MassStatus,
    MassTriple,
    barycenter_inside,
    coefficients,
    critical_line_masses,
    mass_arrays,
    masses,
    require_masses,
)


def deg(alpha, beta):
    return AnglePair.from_degrees(alpha, beta)


class TestMasses(unittest.TestCase):
    """Masses at interior points, singular points and on the critical lines"""

    def test_square_has_equal_masses(self):
        triple = require_masses(deg(45.0, 45.0), ConfigKind.CONVEX)
        for value in (triple.mu1, triple.mu2, triple.mu):
            self.assertAlmostEqual(value, 0.25, places=12)

    def test_singular_points(self):
        for p, kind in [(deg(30.0, 30.0), ConfigKind.CONVEX), (deg(60.0, 30.0), ConfigKind.CONCAVE)]:
            with self.subTest(kind=kind.value):
                result = masses(p, kind)
                self.assertIs(result.status, MassStatus.SINGULAR)
                self.assertFalse(result.ok)
                with self.assertRaises(SingularDenominator):
                    result.unwrap()

    def test_line_values(self):
        cases = [
            ("alpha=60 convex", deg(60.0, 40.0), ConfigKind.CONVEX, "mu2", 0.0),
            ("beta=0 concave", deg(50.0, 0.0), ConfigKind.CONCAVE, "mu1", 0.0),
            ("beta=60 concave", deg(65.0, 60.0), ConfigKind.CONCAVE, "mu1", 0.0),
            ("alpha=60 concave", deg(60.0, 20.0), ConfigKind.CONCAVE, "mu2", 0.0),
        ]
        for name, p, kind, attr, expected in cases:
            with self.subTest(line=name):
                triple = require_masses(p, kind)
                self.assertAlmostEqual(getattr(triple, attr), expected, places=9)

    def test_convex_alpha_60_line(self):
        for beta in np.linspace(15.5, 59.5, 100):
            with self.subTest(beta=float(beta)):
                result = masses(deg(60.0, float(beta)), ConfigKind.CONVEX)
                self.assertIsNot(result.status, MassStatus.SINGULAR)
                self.assertAlmostEqual(result.raw_mu2, 0.0, places=12)

    def test_concave_exceptional_line(self):
        for beta in np.linspace(1.0, 59.0, 59):
            if abs(beta - 30.0) < 0.5:
                continue
            with self.subTest(beta=float(beta)):
                result = masses(deg(45.0 + beta / 2.0, float(beta)), ConfigKind.CONCAVE)
                self.assertAlmostEqual(result.raw_mu1, 0.0, places=9)
                self.assertAlmostEqual(result.raw_mu2, 1.0, places=9)

    def test_symmetry_line(self):
        triple = require_masses(deg(40.0, 40.0), ConfigKind.CONVEX)
        self.assertAlmostEqual(triple.mu1, triple.mu2, places=12)

    def test_inadmissible_masses_keep_raw_values(self):
        result = masses(deg(62.0, 50.0), ConfigKind.CONVEX)
        self.assertIs(result.status, MassStatus.INVALID)
        self.assertLess(result.raw_mu2, 0.0)
        with self.assertRaises(InvalidMasses) as caught:
            result.unwrap()
        self.assertLess(caught.exception.mu2, 0.0)

    def test_concave_requires_alpha_above_beta(self):
        with self.assertRaises(DegenerateGeometry):
            masses(deg(30.0, 40.0), ConfigKind.CONCAVE)

    @settings(deadline=None, max_examples=200)
    @given(st.floats(min_value=1.0, max_value=59.0), st.floats(min_value=1.0, max_value=59.0))
    def test_masses_sum_to_one(self, alpha, beta):
        result = masses(deg(alpha, beta), ConfigKind.CONVEX)
        assume(result.ok)
        self.assertAlmostEqual(result.masses.total, 1.0, places=12)

    @settings(deadline=None, max_examples=100)
    @given(st.floats(min_value=31.0, max_value=59.0), st.floats(min_value=1.0, max_value=29.0))
    def test_vectorized_agrees_with_scalar(self, alpha, beta):
        p = deg(alpha, beta)
        result = masses(p, ConfigKind.CONCAVE)
        assume(result.status is not MassStatus.SINGULAR)
        ta, tb = p.tangents
        mu1, mu2 = mass_arrays(np.array([ta]), np.array([tb]), ConfigKind.CONCAVE)
        self.assertAlmostEqual(float(mu1[0]), result.raw_mu1, places=10)
        self.assertAlmostEqual(float(mu2[0]), result.raw_mu2, places=10)


class TestCoefficients(unittest.TestCase):

    def test_alpha_60_zeroes_a0(self):
        for kind in ConfigKind:
            with self.subTest(kind=kind.value):
                self.assertAlmostEqual(coefficients(deg(60.0, 20.0), kind).a0, 0.0, places=14)

    def test_convex_swap(self):
        c = coefficients(deg(50.0, 20.0), ConfigKind.CONVEX)
        swapped = coefficients(deg(20.0, 50.0), ConfigKind.CONVEX)
        self.assertAlmostEqual(c.a0, swapped.b0, places=14)
        self.assertAlmostEqual(c.a1, swapped.b1, places=14)


class TestCriticalLineMasses(unittest.TestCase):

    def test_table(self):
        self.assertEqual(critical_line_masses(CriticalLine.ALPHA_60_CONVEX).mu2, 0.0)
        exceptional = critical_line_masses(CriticalLine.ALPHA_PLUS_2BETA_90)
        self.assertEqual((exceptional.mu1, exceptional.mu2), (1.0, 0.0))
        exceptional = critical_line_masses(CriticalLine.TWO_ALPHA_MINUS_BETA_90)
        self.assertEqual((exceptional.mu1, exceptional.mu2), (0.0, 1.0))
        self.assertEqual(critical_line_masses(CriticalLine.ALPHA_EQ_BETA).relation, "mu1=mu2")


class TestBarycenter(unittest.TestCase):
    """Barycenter position in concave configurations"""

    def test_inside_in_c1(self):
        p = deg(57.0, 20.0)
        self.assertTrue(barycenter_inside(p, require_masses(p, ConfigKind.CONCAVE)))

    def test_outside_in_c2(self):
        p = deg(62.0, 40.0)
        self.assertFalse(barycenter_inside(p, require_masses(p, ConfigKind.CONCAVE)))

    @settings(deadline=None, max_examples=200)
    @given(st.floats(min_value=47.0, max_value=59.0), st.floats(min_value=0.1, max_value=0.9))
    def test_sampled_c1_inside(self, alpha, fraction):
        p = deg(alpha, fraction * (2.0 * alpha - 90.0))
        result = masses(p, ConfigKind.CONCAVE)
        assume(result.ok)
        self.assertTrue(barycenter_inside(p, result.masses))

    @settings(deadline=None, max_examples=200)
    @given(st.floats(min_value=61.0, max_value=74.0), st.floats(min_value=0.1, max_value=0.9))
    def test_sampled_c2_outside(self, alpha, fraction):
        low = 2.0 * alpha - 90.0
        p = deg(alpha, low + fraction * (60.0 - low))
        result = masses(p, ConfigKind.CONCAVE)
        assume(result.ok)
        self.assertFalse(barycenter_inside(p, result.masses))

    def test_body_mass_order(self):
        triple = MassTriple.from_pair(0.4, 0.2)
        np.testing.assert_allclose(triple.body_masses(), [0.4, 0.2, 0.2, 0.2])
        self.assertTrue(math.isclose(triple.total, 1.0))


if __name__ == '__main__':
    unittest.main(verbosity=2)
